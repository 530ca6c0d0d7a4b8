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
#ifndef ALIGNRW_PREFIXES_H
#define ALIGNRW_PREFIXES_H

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace alignrw {

/// Which of the two ontologies a piece of vocabulary belongs to.
enum class OntologySide { Source, Target };

const char* sideName(OntologySide side);
OntologySide oppositeSide(OntologySide side);

/// Ordered prefix-label -> base-IRI table for one ontology. The first entry
/// declared is the default prefix used to resolve bare local names.
class PrefixTable {
 public:
  void add(const std::string& label, const std::string& iri);
  bool has(const std::string& label) const;
  const std::string* find(const std::string& label) const;
  bool empty() const { return entries_.empty(); }
  const std::string& defaultLabel() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// The pair of prefix tables an alignment declares, one per side.
struct PrefixEnv {
  PrefixTable source;
  PrefixTable target;

  const PrefixTable& table(OntologySide side) const {
    return side == OntologySide::Source ? source : target;
  }
  PrefixTable& table(OntologySide side) {
    return side == OntologySide::Source ? source : target;
  }

  /// Which side declares the given prefix label, if exactly one does.
  /// Throws SideViolationError when both sides declare it.
  std::optional<OntologySide> sideOf(const std::string& label) const;

  /// Env with the two tables exchanged (used by --invert).
  PrefixEnv swapped() const { return PrefixEnv{target, source}; }
};

/// A prefixed name resolved against one side's prefix table. An empty prefix
/// label means the entity was constructed directly against the side's
/// default namespace; names parsed from text always carry the label they
/// resolved through.
struct EntityIri {
  OntologySide side = OntologySide::Source;
  std::string prefix;
  std::string local;

  auto operator<=>(const EntityIri&) const = default;
  bool operator==(const EntityIri&) const = default;

  /// "prefix:local", or just "local" when the prefix label is empty.
  std::string pname() const;
};

/// True iff `name` matches [A-Za-z_][A-Za-z0-9_]*.
bool isValidLocalName(const std::string& name);

}  // namespace alignrw

#endif  // ALIGNRW_PREFIXES_H
