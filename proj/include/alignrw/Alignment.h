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
#ifndef ALIGNRW_ALIGNMENT_H
#define ALIGNRW_ALIGNMENT_H

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "alignrw/ClassExpression.h"
#include "alignrw/Prefixes.h"

namespace alignrw {

enum class Origin { Asserted, Derived };

/// Equivalence between two class (or property) expressions. Cross-side
/// entries keep the source-ontology member in `source`; same-side entries
/// (ontology-internal equivalence axioms) are accepted as well and feed the
/// transitive closure but never the rewrite dictionary.
struct Correspondence {
  ClassExpression source;
  ClassExpression target;
  double confidence = 1.0;
  Origin origin = Origin::Asserted;
  bool property = false;  // both members are property atoms

  bool crossSide() const {
    return source.side() == OntologySide::Source &&
           target.side() == OntologySide::Target;
  }
};

/// Shape taxonomy of a correspondence.
enum class PatternKind {
  ClassSs,  // class atom = class atom
  Cat,      // atom vs class-and-object-restriction composite
  Cav,      // atom vs class-and-data-value composite
  Cu,       // atom vs disjunction
  Ci,       // atom vs conjunction of atoms
  Cc,       // composite on both sides
  PropSs,   // property atom = property atom
};

const char* patternKindName(PatternKind kind);

/// Total classification of a valid correspondence; Cc exactly when neither
/// member is an atom.
PatternKind classifyPattern(const Correspondence& c);

/// A parsed alignment document: the two prefix tables plus all
/// correspondences in file order.
struct Alignment {
  PrefixEnv prefixes;
  std::vector<Correspondence> correspondences;

  /// Alignment with the two ontologies' roles exchanged.
  Alignment inverted() const;
};

/// Loads the alignment JSON document:
///
///   {
///     "source_prefixes": {"label": "<iri>", ...},
///     "target_prefixes": {...},
///     "correspondences": [
///       {"source": "<expr>", "target": "<expr>",
///        "relation": "equivalence", "confidence": 1.0,
///        "type": "class"|"property", "origin": "asserted"|"derived"}
///     ]
///   }
///
/// relation defaults to equivalence (nothing else is accepted), confidence to
/// 1.0 and must lie in [0,1], type to class, origin to asserted.
Alignment loadAlignment(const std::filesystem::path& path);
Alignment parseAlignment(const std::string& jsonText);

/// Serializes an alignment (typically closure output) back to the same JSON
/// document shape, with the origin field spelled out on every entry.
std::string serializeAlignment(const PrefixEnv& env,
                               const std::vector<Correspondence>& cs);

/// One target option of a dictionary key.
struct DictValue {
  ClassExpression target;
  double confidence = 1.0;
  Origin origin = Origin::Asserted;
};

struct DictEntry {
  ClassExpression key;
  bool property = false;
  std::vector<DictValue> values;  // confidence desc, ties by serialized target
};

/// Rewrite dictionary: canonical source expression -> ordered target list.
/// Only cross-side correspondences contribute; duplicates of one
/// (key, target) pair collapse to the highest-confidence occurrence.
class AlignmentDictionary {
 public:
  void insert(const Correspondence& c);
  const DictEntry* lookup(const ClassExpression& key) const;
  const DictEntry* lookupSerialized(const std::string& key) const;
  const std::map<std::string, DictEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, DictEntry> entries_;
};

AlignmentDictionary buildDictionary(const std::vector<Correspondence>& cs);

}  // namespace alignrw

#endif  // ALIGNRW_ALIGNMENT_H
