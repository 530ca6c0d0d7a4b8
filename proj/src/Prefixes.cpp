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
#include "alignrw/Prefixes.h"

#include <cctype>

#include "alignrw/Errors.h"

namespace alignrw {

const char* sideName(OntologySide side) {
  return side == OntologySide::Source ? "source" : "target";
}

OntologySide oppositeSide(OntologySide side) {
  return side == OntologySide::Source ? OntologySide::Target
                                      : OntologySide::Source;
}

void PrefixTable::add(const std::string& label, const std::string& iri) {
  for (auto& e : entries_) {
    if (e.first == label) {
      if (e.second != iri)
        throw AlignmentError("prefix '" + label +
                             "' declared twice with different IRIs");
      return;
    }
  }
  entries_.emplace_back(label, iri);
}

bool PrefixTable::has(const std::string& label) const {
  return find(label) != nullptr;
}

const std::string* PrefixTable::find(const std::string& label) const {
  for (auto& e : entries_)
    if (e.first == label) return &e.second;
  return nullptr;
}

const std::string& PrefixTable::defaultLabel() const {
  if (entries_.empty())
    throw AlignmentError("prefix table is empty, no default prefix");
  return entries_.front().first;
}

std::optional<OntologySide> PrefixEnv::sideOf(const std::string& label) const {
  bool inSource = source.has(label);
  bool inTarget = target.has(label);
  if (inSource && inTarget)
    throw SideViolationError("prefix '" + label +
                             "' is declared by both ontologies");
  if (inSource) return OntologySide::Source;
  if (inTarget) return OntologySide::Target;
  return std::nullopt;
}

std::string EntityIri::pname() const {
  return prefix.empty() ? local : prefix + ":" + local;
}

bool isValidLocalName(const std::string& name) {
  if (name.empty()) return false;
  unsigned char first = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(first) && name[0] != '_') return false;
  for (char c : name) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '_') return false;
  }
  return true;
}

}  // namespace alignrw
