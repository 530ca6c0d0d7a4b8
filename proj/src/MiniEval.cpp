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
#include "alignrw/MiniEval.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "alignrw/ClassExpression.h"
#include "alignrw/Closure.h"
#include "alignrw/Errors.h"

namespace alignrw {

namespace {

bool isInteger(const std::string& text) {
  size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (start == text.size()) return false;
  for (size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

ParseError factError(const std::string& message, int line) {
  return ParseError("facts parse error at line " + std::to_string(line) +
                        ": " + message,
                    line, 0);
}

std::vector<std::string> factTokens(const std::string& line, int lineNo) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      size_t end = line.find('"', i + 1);
      if (end == std::string::npos) {
        throw factError("unterminated string literal", lineNo);
      }
      tokens.push_back(line.substr(i, end - i + 1));
      i = end + 1;
      continue;
    }
    size_t end = i;
    while (end < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[end])) &&
           line[end] != '#') {
      ++end;
    }
    std::string token = line.substr(i, end - i);
    if (token.size() > 1 && token.back() == '.') {
      tokens.push_back(token.substr(0, token.size() - 1));
      tokens.push_back(".");
    } else {
      tokens.push_back(std::move(token));
    }
    i = end;
  }
  return tokens;
}

enum class FactPosition { Subject, Predicate, Object };

Term factTerm(const std::string& token, FactPosition position,
              OntologySide side, const PrefixEnv& env, int lineNo) {
  if (token.front() == '"') {
    if (position != FactPosition::Object) {
      throw factError("string literal outside object position", lineNo);
    }
    return Term::literal(Literal::string(token.substr(1, token.size() - 2)));
  }
  if (token == "true" || token == "false") {
    if (position != FactPosition::Object) {
      throw factError("boolean literal outside object position", lineNo);
    }
    return Term::literal(Literal::boolean(token == "true"));
  }
  if (isInteger(token)) {
    if (position != FactPosition::Object) {
      throw factError("integer literal outside object position", lineNo);
    }
    return Term::literal(Literal::integer(std::stoll(token)));
  }
  if (token == "a") {
    if (position != FactPosition::Predicate) {
      throw factError("'a' is only valid as a predicate", lineNo);
    }
    return Term::rdfType();
  }
  size_t colon = token.find(':');
  if (colon != std::string::npos) {
    std::string label = token.substr(0, colon);
    std::string local = token.substr(colon + 1);
    if (label == "rdf" && local == "type") {
      if (position != FactPosition::Predicate) {
        throw factError("rdf:type is only valid as a predicate", lineNo);
      }
      return Term::rdfType();
    }
    auto declared = env.sideOf(label);
    if (!declared.has_value()) {
      throw factError("unknown prefix '" + label + "'", lineNo);
    }
    if (*declared != side) {
      throw factError("IRI '" + token + "' belongs to the other ontology",
                      lineNo);
    }
    if (!isValidLocalName(local)) {
      throw factError("invalid local name '" + local + "'", lineNo);
    }
    return Term::entity(EntityIri{side, label, local});
  }
  if (env.table(side).empty()) {
    throw factError("bare name '" + token + "' without a default prefix",
                    lineNo);
  }
  if (!isValidLocalName(token)) {
    throw factError("invalid name '" + token + "'", lineNo);
  }
  return Term::entity(EntityIri{side, env.table(side).defaultLabel(), token});
}

using Solution = std::map<std::string, Term>;

bool unifyFact(const Term& pattern, const Term& ground, Solution& solution) {
  if (pattern.kind == Term::Kind::Variable) {
    auto it = solution.find(pattern.var);
    if (it != solution.end()) return it->second == ground;
    solution.emplace(pattern.var, ground);
    return true;
  }
  return pattern == ground;
}

std::vector<Solution> evalGroup(const GroupPattern& group,
                                const FactStore& store) {
  std::vector<Solution> solutions{Solution{}};
  for (const auto& triple : group.triples) {
    std::vector<Solution> next;
    for (const auto& solution : solutions) {
      for (const auto& fact : store.facts) {
        Solution merged = solution;
        if (unifyFact(triple.subject, fact.subject, merged) &&
            unifyFact(triple.predicate, fact.predicate, merged) &&
            unifyFact(triple.object, fact.object, merged)) {
          next.push_back(std::move(merged));
        }
      }
    }
    solutions = std::move(next);
  }
  if (!group.unionBranches.empty()) {
    std::vector<Solution> branchSolutions;
    for (const auto& branch : group.unionBranches) {
      auto rows = evalGroup(branch, store);
      branchSolutions.insert(branchSolutions.end(), rows.begin(), rows.end());
    }
    std::vector<Solution> joined;
    for (const auto& solution : solutions) {
      for (const auto& branchSolution : branchSolutions) {
        Solution merged = solution;
        bool compatible = true;
        for (const auto& [name, term] : branchSolution) {
          auto it = merged.find(name);
          if (it == merged.end()) {
            merged.emplace(name, term);
          } else if (!(it->second == term)) {
            compatible = false;
            break;
          }
        }
        if (compatible) joined.push_back(std::move(merged));
      }
    }
    solutions = std::move(joined);
  }
  return solutions;
}

bool containsRestriction(const ClassExpression& expr) {
  if (expr.kind() == ExprKind::Only || expr.kind() == ExprKind::Card) {
    return true;
  }
  for (const auto& child : expr.children()) {
    if (containsRestriction(child)) return true;
  }
  return false;
}

std::string hexSuffix(std::mt19937& rng) {
  char buffer[9];
  std::snprintf(buffer, sizeof(buffer), "%08x", rng());
  return buffer;
}

// Emits the facts that make `individual` an instance of `expr`. Disjunctions
// instantiate the alternative selected by `branch`; existential fillers get
// individuals derived from the parent's local name.
void emitInstance(FactStore& store, const ClassExpression& expr,
                  const EntityIri& individual, size_t branch,
                  int& fillerCount) {
  switch (expr.kind()) {
    case ExprKind::Atom:
      store.add(TriplePattern{Term::entity(individual), Term::rdfType(),
                              Term::entity(expr.entity())});
      return;
    case ExprKind::Value:
      store.add(TriplePattern{Term::entity(individual),
                              Term::entity(expr.entity()),
                              Term::literal(expr.literal())});
      return;
    case ExprKind::And:
      for (const auto& child : expr.children()) {
        emitInstance(store, child, individual, branch, fillerCount);
      }
      return;
    case ExprKind::Or: {
      const auto& children = expr.children();
      emitInstance(store, children[branch % children.size()], individual,
                   branch, fillerCount);
      return;
    }
    case ExprKind::Some: {
      EntityIri filler{individual.side, individual.prefix,
                       individual.local + "_f" +
                           std::to_string(fillerCount++)};
      store.add(TriplePattern{Term::entity(individual),
                              Term::entity(expr.entity()),
                              Term::entity(filler)});
      emitInstance(store, expr.filler(), filler, branch, fillerCount);
      return;
    }
    case ExprKind::Only:
    case ExprKind::Card:
      return;  // callers skip components containing these
  }
}

std::string normalizeCell(const Term& term) {
  switch (term.kind) {
    case Term::Kind::Iri:
      return "~" + term.iri.local;
    case Term::Kind::Literal:
      return "lit:" + literalText(term.lit);
    case Term::Kind::Variable:
      return "?" + term.var;
    case Term::Kind::RdfType:
      return "a";
  }
  return {};
}

}  // namespace

void FactStore::add(const TriplePattern& fact) {
  if (std::find(facts.begin(), facts.end(), fact) == facts.end()) {
    facts.push_back(fact);
  }
}

FactStore parseFacts(const std::string& text, OntologySide side,
                     const PrefixEnv& env) {
  FactStore store;
  store.side = side;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens = factTokens(line, lineNo);
    if (tokens.empty()) continue;
    if (tokens.size() != 4 || tokens.back() != ".") {
      throw factError("expected 'subject predicate object .'", lineNo);
    }
    Term subject =
        factTerm(tokens[0], FactPosition::Subject, side, env, lineNo);
    Term predicate =
        factTerm(tokens[1], FactPosition::Predicate, side, env, lineNo);
    Term object = factTerm(tokens[2], FactPosition::Object, side, env, lineNo);
    if (subject.kind != Term::Kind::Iri) {
      throw factError("subject must be an IRI", lineNo);
    }
    store.add(TriplePattern{subject, predicate, object});
  }
  return store;
}

FactStore loadFacts(const std::string& path, OntologySide side,
                    const PrefixEnv& env) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open facts file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseFacts(buffer.str(), side, env);
}

ResultSet evaluate(const SelectQuery& query, const FactStore& store) {
  ResultSet result;
  result.header = query.projection;
  for (const auto& solution : evalGroup(query.where, store)) {
    std::vector<Term> row;
    row.reserve(result.header.size());
    for (const auto& name : result.header) {
      auto it = solution.find(name);
      row.push_back(it == solution.end() ? Term::variable(name) : it->second);
    }
    result.rows.push_back(std::move(row));
  }
  std::sort(result.rows.begin(), result.rows.end());
  result.rows.erase(std::unique(result.rows.begin(), result.rows.end()),
                    result.rows.end());
  return result;
}

std::string correspondenceLabel(const Correspondence& c) {
  return serializeClassExpression(c.source) + " = " +
         serializeClassExpression(c.target);
}

GeneratedPair generateAlignedPair(const std::vector<Correspondence>& closure,
                                  int n, unsigned int seed,
                                  const PrefixEnv& env) {
  GeneratedPair out;
  out.source.side = OntologySide::Source;
  out.target.side = OntologySide::Target;
  if (n < 1) throw Error("instance count must be at least 1");

  EquivalenceGraph graph = buildEquivalenceGraph(closure);
  std::vector<size_t> parent(graph.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [edge, confidence] : graph.edges) {
    (void)confidence;
    parent[find(edge.first)] = find(edge.second);
  }

  std::map<size_t, std::vector<size_t>> components;  // root -> node indices
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    components[find(i)].push_back(i);
  }
  // Deterministic component order: smallest member key first.
  std::vector<std::vector<size_t>> ordered;
  for (auto& [root, members] : components) {
    std::sort(members.begin(), members.end(),
              [&graph](size_t a, size_t b) {
                return graph.nodes[a].key < graph.nodes[b].key;
              });
    ordered.push_back(members);
  }
  std::sort(ordered.begin(), ordered.end(),
            [&graph](const std::vector<size_t>& a,
                     const std::vector<size_t>& b) {
              return graph.nodes[a.front()].key < graph.nodes[b.front()].key;
            });

  std::set<size_t> skippedRoots;
  for (const auto& members : ordered) {
    for (size_t idx : members) {
      if (containsRestriction(graph.nodes[idx].expr)) {
        skippedRoots.insert(find(idx));
        break;
      }
    }
  }
  for (const auto& c : closure) {
    if (!c.crossSide()) continue;
    size_t node = graph.index.at(EquivalenceGraph::nodeKey(c.source,
                                                           c.property));
    if (skippedRoots.count(find(node))) {
      out.skipped.insert(correspondenceLabel(c));
      out.warnings.push_back("skipping '" + correspondenceLabel(c) +
                             "': universal or cardinality restriction cannot "
                             "be instantiated");
    }
  }

  std::mt19937 rng(seed);
  const std::string sourcePrefix = env.source.defaultLabel();
  const std::string targetPrefix = env.target.defaultLabel();
  int componentIndex = 0;
  for (const auto& members : ordered) {
    ++componentIndex;
    if (skippedRoots.count(find(members.front()))) continue;
    std::vector<const ClassExpression*> sources;
    std::vector<const ClassExpression*> targets;
    bool property = graph.nodes[members.front()].property;
    for (size_t idx : members) {
      const auto& node = graph.nodes[idx];
      (node.side == OntologySide::Source ? sources : targets)
          .push_back(&node.expr);
    }
    if (sources.empty() || targets.empty()) continue;

    for (int j = 0; j < n; ++j) {
      std::string stem = "i" + std::to_string(componentIndex) + "_" +
                         std::to_string(j) + "_" + hexSuffix(rng);
      if (property) {
        EntityIri srcSubject{OntologySide::Source, sourcePrefix, stem + "_s"};
        EntityIri srcObject{OntologySide::Source, sourcePrefix, stem + "_o"};
        EntityIri tgtSubject{OntologySide::Target, targetPrefix, stem + "_s"};
        EntityIri tgtObject{OntologySide::Target, targetPrefix, stem + "_o"};
        for (const auto* expr : sources) {
          out.source.add(TriplePattern{Term::entity(srcSubject),
                                       Term::entity((*expr).entity()),
                                       Term::entity(srcObject)});
        }
        for (const auto* expr : targets) {
          out.target.add(TriplePattern{Term::entity(tgtSubject),
                                       Term::entity((*expr).entity()),
                                       Term::entity(tgtObject)});
        }
        continue;
      }
      EntityIri srcIndividual{OntologySide::Source, sourcePrefix, stem};
      EntityIri tgtIndividual{OntologySide::Target, targetPrefix, stem};
      int fillerCount = 0;
      for (const auto* expr : sources) {
        emitInstance(out.source, *expr, srcIndividual,
                     static_cast<size_t>(j), fillerCount);
      }
      fillerCount = 0;
      for (const auto* expr : targets) {
        emitInstance(out.target, *expr, tgtIndividual,
                     static_cast<size_t>(j), fillerCount);
      }
    }
  }

  // Noise individuals satisfy no correspondence member on either side.
  for (int j = 0; j < n / 2; ++j) {
    std::string stem = "noise_" + std::to_string(j) + "_" + hexSuffix(rng);
    out.source.add(TriplePattern{
        Term::entity(EntityIri{OntologySide::Source, sourcePrefix, stem}),
        Term::rdfType(),
        Term::entity(EntityIri{OntologySide::Source, sourcePrefix,
                               "Unaligned_Thing"})});
    out.target.add(TriplePattern{
        Term::entity(EntityIri{OntologySide::Target, targetPrefix, stem}),
        Term::rdfType(),
        Term::entity(EntityIri{OntologySide::Target, targetPrefix,
                               "UnalignedThing"})});
  }
  return out;
}

OracleOutcome compareResults(const ResultSet& source,
                             const ResultSet& target) {
  OracleOutcome outcome;
  if (source.rows.size() != target.rows.size()) {
    outcome.pass = false;
    outcome.detail = "row count " + std::to_string(source.rows.size()) +
                     " vs " + std::to_string(target.rows.size());
    return outcome;
  }
  std::vector<size_t> sourceCols;
  std::vector<size_t> targetCols;
  for (size_t i = 0; i < source.header.size(); ++i) {
    auto it = std::find(target.header.begin(), target.header.end(),
                        source.header[i]);
    if (it == target.header.end()) continue;
    sourceCols.push_back(i);
    targetCols.push_back(
        static_cast<size_t>(it - target.header.begin()));
  }
  auto project = [](const ResultSet& rs, const std::vector<size_t>& cols) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(rs.rows.size());
    for (const auto& row : rs.rows) {
      std::vector<std::string> projected;
      projected.reserve(cols.size());
      for (size_t c : cols) projected.push_back(normalizeCell(row[c]));
      rows.push_back(std::move(projected));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  auto sourceRows = project(source, sourceCols);
  auto targetRows = project(target, targetCols);
  if (sourceRows == targetRows) return outcome;

  outcome.pass = false;
  std::vector<std::vector<std::string>> sourceOnly;
  std::vector<std::vector<std::string>> targetOnly;
  std::set_difference(sourceRows.begin(), sourceRows.end(), targetRows.begin(),
                      targetRows.end(), std::back_inserter(sourceOnly));
  std::set_difference(targetRows.begin(), targetRows.end(), sourceRows.begin(),
                      sourceRows.end(), std::back_inserter(targetOnly));
  std::ostringstream detail;
  detail << "rows differ on shared variables;";
  auto describe = [&detail](const char* tag,
                            const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    detail << " " << tag << ":";
    for (size_t i = 0; i < rows.size() && i < 3; ++i) {
      detail << " (";
      for (size_t j = 0; j < rows[i].size(); ++j) {
        if (j > 0) detail << ", ";
        detail << rows[i][j];
      }
      detail << ")";
    }
    if (rows.size() > 3) detail << " ...";
  };
  describe("source-only", sourceOnly);
  describe("target-only", targetOnly);
  outcome.detail = detail.str();
  return outcome;
}

}  // namespace alignrw
