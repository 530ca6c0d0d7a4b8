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
#ifndef ALIGNRW_ERRORS_H
#define ALIGNRW_ERRORS_H

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alignrw {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or resolution error while parsing an expression, query, or facts
/// file. Carries the 1-based position the tokenizer had reached.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line(line), column(column) {}

  int line;
  int column;
};

/// An expression mixes source- and target-side vocabulary, or a
/// correspondence pairs its members against the declared orientation.
class SideViolationError : public Error {
 public:
  using Error::Error;
};

/// Structural problem in an alignment document (bad confidence, unknown
/// relation, malformed member, ...).
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Strict-mode rewriting found source vocabulary with no correspondence.
class UnmappedVocabularyError : public Error {
 public:
  UnmappedVocabularyError(const std::string& what, std::vector<std::string> iris)
      : Error(what), iris(std::move(iris)) {}

  std::vector<std::string> iris;
};

/// Rewriting dropped every projected variable.
class EmptyProjectionError : public Error {
 public:
  using Error::Error;
};

/// Query-pair generation was asked for a key the dictionary does not hold.
class KeyNotFoundError : public Error {
 public:
  using Error::Error;
};

/// No dictionary key scored at or above the acceptance threshold.
class NoMatchError : public Error {
 public:
  NoMatchError(const std::string& what,
               std::vector<std::pair<std::string, double>> top)
      : Error(what), topCandidates(std::move(top)) {}

  std::vector<std::pair<std::string, double>> topCandidates;
};

}  // namespace alignrw

#endif  // ALIGNRW_ERRORS_H
