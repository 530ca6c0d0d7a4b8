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
#ifndef ALIGNRW_MINI_EVAL_H
#define ALIGNRW_MINI_EVAL_H

#include <set>
#include <string>
#include <vector>

#include "alignrw/Alignment.h"
#include "alignrw/SparqlAst.h"

namespace alignrw {

/// Ground triples of one ontology side. Set semantics: add() ignores
/// duplicates.
struct FactStore {
  OntologySide side = OntologySide::Source;
  std::vector<TriplePattern> facts;

  void add(const TriplePattern& fact);
};

/// Line-oriented fact files: one `subject predicate object .` per line,
/// '#' comments, prefixed names resolved against the side's prefix table
/// (bare names against its default prefix).
FactStore loadFacts(const std::string& path, OntologySide side,
                    const PrefixEnv& env);
FactStore parseFacts(const std::string& text, OntologySide side,
                     const PrefixEnv& env);

struct ResultSet {
  std::vector<std::string> header;
  std::vector<std::vector<Term>> rows;  // sorted, distinct
};

/// BGP semantics over the store: a group's solutions satisfy all its triples
/// and, if present, one union branch; DISTINCT collapse at the end.
/// Projection cells a solution leaves unbound keep the variable term.
ResultSet evaluate(const SelectQuery& query, const FactStore& store);

struct GeneratedPair {
  FactStore source;
  FactStore target;
  std::vector<std::string> warnings;
  // serialized "source = target" forms of correspondences that were not
  // instantiated (universal or cardinality restrictions in their component)
  std::set<std::string> skipped;
};

std::string correspondenceLabel(const Correspondence& c);

/// Builds paired fact stores for a closed correspondence set: per equivalence
/// component, n individuals (shared local names across sides) satisfying
/// every member on its own side, plus n/2 unaligned noise individuals per
/// side. Deterministic for a given seed.
GeneratedPair generateAlignedPair(const std::vector<Correspondence>& closure,
                                  int n, unsigned int seed,
                                  const PrefixEnv& env);

struct OracleOutcome {
  bool pass = true;
  std::string detail;
};

/// Row-count equality plus multiset equality over the shared projection
/// variables; IRIs are compared by local name so paired individuals match
/// across sides.
OracleOutcome compareResults(const ResultSet& source, const ResultSet& target);

}  // namespace alignrw

#endif  // ALIGNRW_MINI_EVAL_H
