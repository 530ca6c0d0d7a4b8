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
#ifndef ALIGNRW_SPARQL_AST_H
#define ALIGNRW_SPARQL_AST_H

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alignrw/ClassExpression.h"
#include "alignrw/Prefixes.h"

namespace alignrw {

/// One position of a triple pattern: a variable, a resolved IRI, a literal,
/// or the distinguished rdf:type predicate.
struct Term {
  enum class Kind { Variable, Iri, Literal, RdfType };

  Kind kind = Kind::Variable;
  std::string var;   // Variable name without the '?'
  EntityIri iri;     // Kind::Iri only
  Literal lit;       // Kind::Literal only

  static Term variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.var = std::move(name);
    return t;
  }
  static Term entity(EntityIri iri) {
    Term t;
    t.kind = Kind::Iri;
    t.iri = std::move(iri);
    return t;
  }
  static Term literal(Literal lit) {
    Term t;
    t.kind = Kind::Literal;
    t.lit = std::move(lit);
    return t;
  }
  static Term rdfType() {
    Term t;
    t.kind = Kind::RdfType;
    return t;
  }

  bool isVariable() const { return kind == Kind::Variable; }
  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;

  /// Text form as it appears in a serialized query ("?x", "p:Name", ...).
  std::string text() const;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  bool operator==(const TriplePattern&) const = default;
};

/// Triples optionally followed by one UNION block; branches are groups
/// themselves, so nested unions live inside branches.
struct GroupPattern {
  std::vector<TriplePattern> triples;
  std::vector<GroupPattern> unionBranches;  // empty, or >= 2 branches

  bool hasUnion() const { return !unionBranches.empty(); }
  bool operator==(const GroupPattern&) const = default;
};

/// SELECT DISTINCT query over the supported subset.
struct SelectQuery {
  std::vector<std::pair<std::string, std::string>> prefixes;
  std::vector<std::string> projection;  // variable names, no '?'
  GroupPattern where;

  bool operator==(const SelectQuery&) const = default;
};

/// Parses
///
///   query  = { "PREFIX" label ":" "<iri>" } "SELECT" "DISTINCT" var { var }
///            "WHERE" group
///   group  = "{" { triple "." } [ group "UNION" group { "UNION" group } ] "}"
///   triple = term term term
///
/// Keywords are case-insensitive; "a" is accepted as predicate shorthand for
/// rdf:type. Prefixed names resolve their side through `env`; prefixes the
/// query declares itself must agree with `env` by label or base IRI. Errors
/// carry line/column.
SelectQuery parseSelect(std::string_view text, const PrefixEnv& env);

/// Deterministic text form; reparsing yields a structurally equal query.
std::string serializeSelect(const SelectQuery& query);

/// Every variable name occurring anywhere in the WHERE clause.
std::set<std::string> queryVariables(const SelectQuery& query);
std::set<std::string> groupVariables(const GroupPattern& group);

/// Structural equality ignoring the prefix declaration list.
bool sameQueryShape(const SelectQuery& a, const SelectQuery& b);

}  // namespace alignrw

#endif  // ALIGNRW_SPARQL_AST_H
