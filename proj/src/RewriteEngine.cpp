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
#include "alignrw/RewriteEngine.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "alignrw/Errors.h"

namespace alignrw {

namespace {

std::string freshPatternVar(int& counter, const std::string& anchor) {
  std::string name;
  do {
    name = "v" + std::to_string(counter++);
  } while (name == anchor);
  return name;
}

PatternBgp compileInto(const ClassExpression& expr, const std::string& anchor,
                       int& counter) {
  PatternBgp out;
  out.anchor = anchor;
  switch (expr.kind()) {
    case ExprKind::Atom:
      out.alternatives.push_back({TriplePattern{
          Term::variable(anchor), Term::rdfType(), Term::entity(expr.entity())}});
      return out;
    case ExprKind::Value:
      out.alternatives.push_back(
          {TriplePattern{Term::variable(anchor), Term::entity(expr.entity()),
                         Term::literal(expr.literal())}});
      return out;
    case ExprKind::Some:
    case ExprKind::Only:
    case ExprKind::Card: {
      if (expr.kind() != ExprKind::Some) {
        out.warnings.push_back("restriction in '" +
                               serializeClassExpression(expr) +
                               "' approximated existentially");
      }
      std::string filler = freshPatternVar(counter, anchor);
      TriplePattern head{Term::variable(anchor), Term::entity(expr.entity()),
                         Term::variable(filler)};
      if (expr.hasFiller()) {
        PatternBgp sub = compileInto(expr.filler(), filler, counter);
        for (const auto& alt : sub.alternatives) {
          std::vector<TriplePattern> triples;
          triples.push_back(head);
          triples.insert(triples.end(), alt.begin(), alt.end());
          out.alternatives.push_back(std::move(triples));
        }
        out.warnings.insert(out.warnings.end(), sub.warnings.begin(),
                            sub.warnings.end());
      } else {
        out.alternatives.push_back({head});
      }
      return out;
    }
    case ExprKind::And: {
      out.alternatives.push_back({});
      for (const auto& child : expr.children()) {
        PatternBgp sub = compileInto(child, anchor, counter);
        out.warnings.insert(out.warnings.end(), sub.warnings.begin(),
                            sub.warnings.end());
        std::vector<std::vector<TriplePattern>> next;
        for (const auto& left : out.alternatives) {
          for (const auto& right : sub.alternatives) {
            std::vector<TriplePattern> combined = left;
            combined.insert(combined.end(), right.begin(), right.end());
            next.push_back(std::move(combined));
          }
        }
        out.alternatives = std::move(next);
      }
      return out;
    }
    case ExprKind::Or: {
      for (const auto& child : expr.children()) {
        PatternBgp sub = compileInto(child, anchor, counter);
        out.warnings.insert(out.warnings.end(), sub.warnings.begin(),
                            sub.warnings.end());
        for (auto& alt : sub.alternatives) {
          out.alternatives.push_back(std::move(alt));
        }
      }
      return out;
    }
  }
  return out;  // unreachable
}

bool unifyTerm(const Term& pattern, const Term& query,
               std::map<std::string, Term>& assignment) {
  if (pattern.kind == Term::Kind::Variable) {
    auto it = assignment.find(pattern.var);
    if (it != assignment.end()) return it->second == query;
    assignment.emplace(pattern.var, query);
    return true;
  }
  return pattern == query;
}

void matchRec(const std::vector<TriplePattern>& pattern, size_t index,
              const std::vector<TriplePattern>& triples,
              std::vector<bool>& used,
              const std::map<std::string, Term>& assignment,
              std::vector<size_t>& consumed, const std::string& anchor,
              std::vector<MatchBinding>& out) {
  if (index == pattern.size()) {
    auto it = assignment.find(anchor);
    if (it == assignment.end() || !it->second.isVariable()) return;
    out.push_back(MatchBinding{assignment, consumed});
    return;
  }
  for (size_t j = 0; j < triples.size(); ++j) {
    if (used[j]) continue;
    std::map<std::string, Term> next = assignment;
    if (!unifyTerm(pattern[index].subject, triples[j].subject, next)) continue;
    if (!unifyTerm(pattern[index].predicate, triples[j].predicate, next))
      continue;
    if (!unifyTerm(pattern[index].object, triples[j].object, next)) continue;
    used[j] = true;
    consumed.push_back(j);
    matchRec(pattern, index + 1, triples, used, next, consumed, anchor, out);
    consumed.pop_back();
    used[j] = false;
  }
}

// Internal anchor name for patterns matched against or instantiated into a
// query. Underscore keeps it clear of the v<k> fresh-variable namespace.
const char* const kAnchor = "_a";

struct Candidate {
  const DictEntry* entry = nullptr;
  PatternBgp bgp;
  size_t patternSize = 0;
  double topConfidence = 0.0;
  std::string keyText;
};

std::vector<Candidate> buildCandidates(const AlignmentDictionary& dict) {
  std::vector<Candidate> out;
  for (const auto& [key, entry] : dict.entries()) {
    if (entry.property) continue;
    Candidate c;
    c.entry = &entry;
    c.bgp = compilePattern(entry.key, kAnchor);
    for (const auto& alt : c.bgp.alternatives) {
      c.patternSize = std::max(c.patternSize, alt.size());
    }
    c.topConfidence = entry.values.front().confidence;
    c.keyText = key;
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.patternSize != b.patternSize)
                       return a.patternSize > b.patternSize;
                     if (a.topConfidence != b.topConfidence)
                       return a.topConfidence > b.topConfidence;
                     return a.keyText < b.keyText;
                   });
  return out;
}

struct Application {
  const Candidate* candidate = nullptr;
  MatchBinding binding;
  std::string anchorVar;
  size_t firstConsumed = 0;
};

// Match results for one group, branches included. Applications are fixed by
// the greedy pass; only the choice of target per application varies between
// output variants.
struct MatchedGroup {
  const GroupPattern* group = nullptr;
  std::vector<Application> apps;
  std::vector<size_t> residualIndex;
  std::vector<TriplePattern> residualTriple;  // after predicate substitution
  std::vector<AppliedCorrespondence> predicateApplied;
  double predicateProduct = 1.0;
  std::vector<MatchedGroup> branches;
};

MatchedGroup matchGroup(const GroupPattern& group,
                        const std::vector<Candidate>& candidates,
                        const AlignmentDictionary& dict) {
  MatchedGroup mg;
  mg.group = &group;
  std::vector<bool> consumed(group.triples.size(), false);
  for (const auto& cand : candidates) {
    for (const auto& alt : cand.bgp.alternatives) {
      for (auto& binding : matchPattern(alt, kAnchor, group.triples)) {
        bool overlap = false;
        for (size_t idx : binding.consumed) {
          if (consumed[idx]) overlap = true;
        }
        if (overlap) continue;
        for (size_t idx : binding.consumed) consumed[idx] = true;
        Application app;
        app.candidate = &cand;
        app.anchorVar = binding.assignment.at(kAnchor).var;
        app.firstConsumed =
            *std::min_element(binding.consumed.begin(), binding.consumed.end());
        app.binding = std::move(binding);
        mg.apps.push_back(std::move(app));
      }
    }
  }
  for (size_t i = 0; i < group.triples.size(); ++i) {
    if (consumed[i]) continue;
    TriplePattern triple = group.triples[i];
    if (triple.predicate.kind == Term::Kind::Iri &&
        triple.predicate.iri.side == OntologySide::Source) {
      const DictEntry* entry =
          dict.lookup(ClassExpression::atom(triple.predicate.iri));
      if (entry != nullptr && entry->property) {
        const DictValue& value = entry->values.front();
        AppliedCorrespondence applied;
        applied.correspondence =
            Correspondence{entry->key, value.target, value.confidence,
                           value.origin, true};
        applied.consumed = {i};
        mg.predicateApplied.push_back(std::move(applied));
        mg.predicateProduct *= value.confidence;
        triple.predicate = Term::entity(value.target.entity());
      }
    }
    mg.residualIndex.push_back(i);
    mg.residualTriple.push_back(std::move(triple));
  }
  for (const auto& branch : group.unionBranches) {
    mg.branches.push_back(matchGroup(branch, candidates, dict));
  }
  return mg;
}

void flattenApps(const MatchedGroup& mg, std::vector<const Application*>& out) {
  for (const auto& app : mg.apps) out.push_back(&app);
  for (const auto& branch : mg.branches) flattenApps(branch, out);
}

struct InstantiateContext {
  const std::vector<size_t>* choices = nullptr;
  size_t cursor = 0;
  int freshCounter = 1;
  RewriteReport report;
};

Term instantiateTerm(const Term& term, const std::string& anchorVar,
                     std::map<std::string, std::string>& freshNames,
                     int& freshCounter) {
  if (term.kind != Term::Kind::Variable) return term;
  if (term.var == kAnchor) return Term::variable(anchorVar);
  auto it = freshNames.find(term.var);
  if (it == freshNames.end()) {
    it = freshNames
             .emplace(term.var, "v" + std::to_string(freshCounter++))
             .first;
  }
  return Term::variable(it->second);
}

GroupPattern instantiateGroup(const MatchedGroup& mg,
                              InstantiateContext& ctx) {
  struct Placed {
    size_t position;
    std::vector<TriplePattern> triples;
  };
  std::vector<Placed> placed;
  std::vector<std::vector<std::vector<TriplePattern>>> disjunctions;

  for (const auto& app : mg.apps) {
    size_t choice = (*ctx.choices)[ctx.cursor++];
    const DictValue& value = app.candidate->entry->values[choice];
    PatternBgp target = compilePattern(value.target, kAnchor);

    std::map<std::string, std::string> freshNames;
    auto instantiate = [&](const std::vector<TriplePattern>& triples) {
      std::vector<TriplePattern> out;
      out.reserve(triples.size());
      for (const auto& t : triples) {
        out.push_back(TriplePattern{
            instantiateTerm(t.subject, app.anchorVar, freshNames,
                            ctx.freshCounter),
            instantiateTerm(t.predicate, app.anchorVar, freshNames,
                            ctx.freshCounter),
            instantiateTerm(t.object, app.anchorVar, freshNames,
                            ctx.freshCounter)});
      }
      return out;
    };

    if (target.disjunctive()) {
      std::vector<std::vector<TriplePattern>> alternatives;
      alternatives.reserve(target.alternatives.size());
      for (const auto& alt : target.alternatives) {
        alternatives.push_back(instantiate(alt));
      }
      disjunctions.push_back(std::move(alternatives));
    } else {
      placed.push_back(Placed{app.firstConsumed, instantiate(target.triples())});
    }

    AppliedCorrespondence applied;
    applied.correspondence =
        Correspondence{app.candidate->entry->key, value.target,
                       value.confidence, value.origin, false};
    applied.anchorVariable = app.anchorVar;
    applied.consumed = app.binding.consumed;
    ctx.report.applied.push_back(std::move(applied));
    ctx.report.confidenceProduct *= value.confidence;
    for (const auto& w : app.candidate->bgp.warnings) {
      ctx.report.warnings.push_back(w);
    }
    for (const auto& w : target.warnings) {
      ctx.report.warnings.push_back(w);
    }
  }

  for (size_t i = 0; i < mg.residualIndex.size(); ++i) {
    placed.push_back(Placed{mg.residualIndex[i], {mg.residualTriple[i]}});
  }
  ctx.report.applied.insert(ctx.report.applied.end(),
                            mg.predicateApplied.begin(),
                            mg.predicateApplied.end());
  ctx.report.confidenceProduct *= mg.predicateProduct;

  std::vector<GroupPattern> rewrittenBranches;
  for (const auto& branch : mg.branches) {
    rewrittenBranches.push_back(instantiateGroup(branch, ctx));
  }

  std::stable_sort(
      placed.begin(), placed.end(),
      [](const Placed& a, const Placed& b) { return a.position < b.position; });
  GroupPattern out;
  for (const auto& p : placed) {
    out.triples.insert(out.triples.end(), p.triples.begin(), p.triples.end());
  }
  if (disjunctions.empty()) {
    out.unionBranches = std::move(rewrittenBranches);
    return out;
  }
  // Distribute disjunctive replacements into a single UNION: one branch per
  // combination. A union block the group already had stays nested inside
  // every branch.
  std::vector<std::vector<TriplePattern>> combos{{}};
  for (const auto& d : disjunctions) {
    std::vector<std::vector<TriplePattern>> next;
    for (const auto& combo : combos) {
      for (const auto& alt : d) {
        std::vector<TriplePattern> merged = combo;
        merged.insert(merged.end(), alt.begin(), alt.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  for (auto& combo : combos) {
    GroupPattern branch;
    branch.triples = std::move(combo);
    branch.unionBranches = rewrittenBranches;
    out.unionBranches.push_back(std::move(branch));
  }
  return out;
}

int freshBase(const SelectQuery& query) {
  int best = 0;
  for (const auto& name : queryVariables(query)) {
    if (name.size() < 2 || name[0] != 'v') continue;
    bool digits = true;
    for (size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    }
    if (!digits) continue;
    best = std::max(best, std::stoi(name.substr(1)));
  }
  return best + 1;
}

void collectIris(const GroupPattern& group,
                 std::vector<const EntityIri*>& out) {
  for (const auto& t : group.triples) {
    for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
      if (term->kind == Term::Kind::Iri) out.push_back(&term->iri);
    }
  }
  for (const auto& branch : group.unionBranches) collectIris(branch, out);
}

std::vector<std::pair<std::string, std::string>> usedPrefixes(
    const GroupPattern& group, const PrefixEnv& env) {
  std::vector<const EntityIri*> iris;
  collectIris(group, iris);
  std::set<std::pair<std::string, std::string>> decls;
  for (const EntityIri* iri : iris) {
    if (iri->prefix.empty()) continue;
    const std::string* base = env.table(iri->side).find(iri->prefix);
    if (base != nullptr) decls.emplace(iri->prefix, *base);
  }
  return {decls.begin(), decls.end()};
}

std::vector<std::string> sourceSideIris(const GroupPattern& group) {
  std::vector<const EntityIri*> iris;
  collectIris(group, iris);
  std::set<std::string> names;
  for (const EntityIri* iri : iris) {
    if (iri->side == OntologySide::Source) names.insert(iri->pname());
  }
  return {names.begin(), names.end()};
}

void dedupePreservingOrder(std::vector<std::string>& items) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (auto& item : items) {
    if (seen.insert(item).second) out.push_back(std::move(item));
  }
  items = std::move(out);
}

}  // namespace

PatternBgp compilePattern(const ClassExpression& expr,
                          const std::string& anchor) {
  int counter = 1;
  return compileInto(expr, anchor, counter);
}

std::vector<MatchBinding> matchPattern(
    const std::vector<TriplePattern>& pattern, const std::string& anchor,
    const std::vector<TriplePattern>& triples) {
  std::vector<MatchBinding> out;
  if (pattern.empty()) return out;
  std::vector<bool> used(triples.size(), false);
  std::vector<size_t> consumed;
  matchRec(pattern, 0, triples, used, {}, consumed, anchor, out);
  return out;
}

std::vector<RewriteResult> rewriteQuery(const SelectQuery& query,
                                        const AlignmentDictionary& dict,
                                        const PrefixEnv& env,
                                        const RewriteOptions& opts) {
  std::vector<Candidate> candidates = buildCandidates(dict);
  MatchedGroup matched = matchGroup(query.where, candidates, dict);
  std::vector<const Application*> apps;
  flattenApps(matched, apps);

  // Enumerate one choice tuple per output variant: the first application's
  // target index varies slowest.
  std::vector<std::vector<size_t>> tuples;
  std::vector<size_t> current(apps.size(), 0);
  bool done = false;
  while (!done) {
    tuples.push_back(current);
    done = true;
    for (size_t pos = apps.size(); pos > 0;) {
      --pos;
      if (++current[pos] < apps[pos]->candidate->entry->values.size()) {
        done = false;
        break;
      }
      current[pos] = 0;
    }
  }

  int base = freshBase(query);
  std::vector<RewriteResult> results;
  for (const auto& tuple : tuples) {
    InstantiateContext ctx;
    ctx.choices = &tuple;
    ctx.freshCounter = base;
    RewriteResult result;
    result.query.where = instantiateGroup(matched, ctx);

    std::set<std::string> remaining = groupVariables(result.query.where);
    for (const auto& name : query.projection) {
      if (remaining.count(name)) {
        result.query.projection.push_back(name);
      } else {
        ctx.report.droppedVariables.push_back(name);
      }
    }
    if (result.query.projection.empty()) {
      throw EmptyProjectionError(
          "rewriting dropped every projected variable");
    }

    result.query.prefixes = usedPrefixes(result.query.where, env);
    std::vector<std::string> unmapped = sourceSideIris(result.query.where);
    if (!unmapped.empty()) {
      if (opts.strict) {
        throw UnmappedVocabularyError(
            "no correspondence covers some source vocabulary", unmapped);
      }
      ctx.report.unmappedIris = unmapped;
    }
    dedupePreservingOrder(ctx.report.warnings);
    result.report = std::move(ctx.report);
    results.push_back(std::move(result));
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const RewriteResult& a, const RewriteResult& b) {
                     return a.report.confidenceProduct >
                            b.report.confidenceProduct;
                   });
  return results;
}

SelectQuery patternQuery(const ClassExpression& expr, const PrefixEnv& env,
                         std::vector<std::string>* warnings) {
  PatternBgp bgp = compilePattern(expr, "v1");
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), bgp.warnings.begin(),
                     bgp.warnings.end());
  }
  SelectQuery query;
  if (bgp.disjunctive()) {
    for (const auto& alt : bgp.alternatives) {
      GroupPattern branch;
      branch.triples = alt;
      query.where.unionBranches.push_back(std::move(branch));
    }
    query.projection = {bgp.anchor};
  } else {
    query.where.triples = bgp.triples();
    for (const auto& t : query.where.triples) {
      for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
        if (term->kind == Term::Kind::Variable) {
          query.projection.push_back(term->var);
        }
      }
    }
    dedupePreservingOrder(query.projection);
  }
  query.prefixes = usedPrefixes(query.where, env);
  return query;
}

SelectQuery propertyQuery(const EntityIri& property, const PrefixEnv& env) {
  SelectQuery query;
  query.projection = {"v1", "v2"};
  query.where.triples.push_back(TriplePattern{Term::variable("v1"),
                                              Term::entity(property),
                                              Term::variable("v2")});
  query.prefixes = usedPrefixes(query.where, env);
  return query;
}

QueryPair generateQueryPair(const ClassExpression& key,
                            const AlignmentDictionary& dict,
                            const PrefixEnv& env) {
  const DictEntry* entry = dict.lookup(key);
  if (entry == nullptr) {
    throw KeyNotFoundError("no dictionary entry for key '" +
                           serializeClassExpression(key) + "'");
  }
  QueryPair pair;
  if (entry->property) {
    pair.source = propertyQuery(entry->key.entity(), env);
    for (const auto& value : entry->values) {
      pair.targets.emplace_back(propertyQuery(value.target.entity(), env),
                                value.confidence);
    }
    return pair;
  }
  pair.source = patternQuery(entry->key, env, &pair.warnings);
  for (const auto& value : entry->values) {
    pair.targets.emplace_back(patternQuery(value.target, env, &pair.warnings),
                              value.confidence);
  }
  return pair;
}

}  // namespace alignrw
