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
#ifndef ALIGNRW_REWRITE_ENGINE_H
#define ALIGNRW_REWRITE_ENGINE_H

#include <map>
#include <string>
#include <vector>

#include "alignrw/Alignment.h"
#include "alignrw/SparqlAst.h"

namespace alignrw {

/// Basic graph pattern a class expression compiles to. Disjunctions produce
/// one triple list per alternative; everything else exactly one. The anchor
/// variable occurs in every alternative.
struct PatternBgp {
  std::string anchor;
  std::vector<std::vector<TriplePattern>> alternatives;
  std::vector<std::string> warnings;

  bool disjunctive() const { return alternatives.size() > 1; }
  const std::vector<TriplePattern>& triples() const {
    return alternatives.front();
  }
};

/// Compiles an expression to the graph pattern its instances satisfy:
///   Atom(C)      -> { anchor rdf:type C }
///   And(e...)    -> concatenation on the shared anchor
///   Or(e...)     -> one alternative per disjunct
///   Some(p, f)   -> { anchor p y } plus the filler's pattern on fresh y
///   Value(p, v)  -> { anchor p v }
///   Only/Card    -> like Some, with an approximation warning
PatternBgp compilePattern(const ClassExpression& expr,
                          const std::string& anchor);

/// One homomorphism from a (non-disjunctive) pattern into a triple list.
struct MatchBinding {
  std::map<std::string, Term> assignment;  // pattern variable -> query term
  std::vector<size_t> consumed;            // matched triple indices, in
                                           // pattern order
};

/// All homomorphisms of `pattern` into `triples` whose anchor lands on a
/// query variable, in lexicographic order of the consumed index tuple.
std::vector<MatchBinding> matchPattern(
    const std::vector<TriplePattern>& pattern, const std::string& anchor,
    const std::vector<TriplePattern>& triples);

/// One correspondence application recorded in a rewrite report.
struct AppliedCorrespondence {
  Correspondence correspondence;  // key paired with the chosen target
  std::string anchorVariable;     // empty for predicate substitutions
  std::vector<size_t> consumed;   // triple indices in the enclosing group
};

struct RewriteReport {
  std::vector<AppliedCorrespondence> applied;
  std::vector<std::string> droppedVariables;
  std::vector<std::string> unmappedIris;
  std::vector<std::string> warnings;
  double confidenceProduct = 1.0;
};

struct RewriteOptions {
  bool strict = true;  // unmapped source vocabulary is an error
};

struct RewriteResult {
  SelectQuery query;
  RewriteReport report;
};

/// Rewrites a source-vocabulary query into the target vocabulary.
///
/// Dictionary keys are tried longest-pattern-first (then by descending best
/// confidence, then canonical key order) and each query triple is consumed at
/// most once. Keys with several targets branch into one result per
/// combination, ordered by descending product of confidences. Disjunctive
/// targets become UNION blocks; property entries substitute predicates in the
/// triples no pattern consumed. Variables keep their names; target-internal
/// positions get fresh variables continuing the query's v<k> numbering.
/// Projection variables that lost every occurrence are dropped and reported;
/// dropping all of them is an error.
std::vector<RewriteResult> rewriteQuery(const SelectQuery& query,
                                        const AlignmentDictionary& dict,
                                        const PrefixEnv& env,
                                        const RewriteOptions& opts = {});

/// SELECT DISTINCT query whose WHERE is the expression's compiled pattern,
/// anchored at ?v1. Non-disjunctive patterns project every pattern variable
/// in first-use order; disjunctive ones become a UNION projecting the anchor.
SelectQuery patternQuery(const ClassExpression& expr, const PrefixEnv& env,
                         std::vector<std::string>* warnings = nullptr);

/// SELECT DISTINCT ?v1 ?v2 WHERE { ?v1 <property> ?v2 }
SelectQuery propertyQuery(const EntityIri& property, const PrefixEnv& env);

/// Source query plus one target query per dictionary value for `key`.
struct QueryPair {
  SelectQuery source;
  std::vector<std::pair<SelectQuery, double>> targets;
  std::vector<std::string> warnings;
};

QueryPair generateQueryPair(const ClassExpression& key,
                            const AlignmentDictionary& dict,
                            const PrefixEnv& env);

}  // namespace alignrw

#endif  // ALIGNRW_REWRITE_ENGINE_H
