/*
 * Copyright (c) 2026 the alignrw authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */
#ifndef ALIGNRW_TESTS_TEST_UTIL_H
#define ALIGNRW_TESTS_TEST_UTIL_H

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "alignrw/Prefixes.h"

namespace alignrw::test {

inline std::string dataPath(const std::string& name) {
  return std::string(ALIGNRW_DATA_DIR) + "/" + name;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

/// Prefix environment matching the bundled fixture files.
inline PrefixEnv miniEnv() {
  PrefixEnv env;
  env.source.add("onto_Source", "http://example.org/onto/ekaw#");
  env.target.add("target_onto", "http://example.org/onto/edas#");
  return env;
}

struct CommandResult {
  int exitCode = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs a shell command and captures its combined output and exit code.
inline CommandResult runCommand(const std::string& command) {
  CommandResult result;
  std::string wrapped = command + " 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace alignrw::test

#endif  // ALIGNRW_TESTS_TEST_UTIL_H
