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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../TestUtil.h"
#include "alignrw/Closure.h"
#include "alignrw/Errors.h"
#include "alignrw/RewriteEngine.h"
#include "doctest.h"

using namespace alignrw;

namespace {

FactStore sourceFacts(const std::string& text) {
  PrefixEnv env = test::miniEnv();
  return parseFacts(text, OntologySide::Source, env);
}

SelectQuery sourceQuery(const std::string& text) {
  PrefixEnv env = test::miniEnv();
  return parseSelect(text, env);
}

Term iri(const char* local) {
  return Term::entity(EntityIri{OntologySide::Source, "onto_Source", local});
}

}  // namespace

TEST_CASE("parseFacts reads prefixed and bare names, comments, literals") {
  FactStore store = sourceFacts(
      "# sample individuals\n"
      "\n"
      "paper1 a Accepted_Paper .\n"
      "onto_Source:paper1 rdf:type onto_Source:ConferencePaper .\n"
      "paper1 pages 12 .\n"
      "paper1 cameraReady true .\n"
      "paper1 title \"On Things; a Study\" .\n"
      "paper1 a Accepted_Paper .\n");
  CHECK(store.side == OntologySide::Source);
  REQUIRE(store.facts.size() == 5);  // the duplicate line is ignored
  CHECK(store.facts[0].subject == iri("paper1"));
  CHECK(store.facts[0].predicate == Term::rdfType());
  CHECK(store.facts[0].object == iri("Accepted_Paper"));
  CHECK(store.facts[1].predicate == Term::rdfType());
  CHECK(store.facts[2].object == Term::literal(Literal::integer(12)));
  CHECK(store.facts[3].object == Term::literal(Literal::boolean(true)));
  CHECK(store.facts[4].object ==
        Term::literal(Literal::string("On Things; a Study")));
}

TEST_CASE("fact lines that break the grammar report their line number") {
  struct Bad {
    const char* text;
    const char* fragment;
  };
  const Bad cases[] = {
      {"paper1 a target_onto:Paper .", "belongs to the other ontology"},
      {"paper1 a Poster", "line 1"},
      {"paper1 a .", "line 1"},
      {"12 a Poster .", "line 1"},
      {"nosuch:paper1 a Poster .", "line 1"},
      {"paper1 title \"unterminated .", "line 1"},
      {"paper1 knows a .", "line 1"},
      {"\n\npaper1 a Poster", "line 3"},
  };
  for (const Bad& bad : cases) {
    CAPTURE(bad.text);
    try {
      sourceFacts(bad.text);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(test::contains(e.what(), "facts parse error at line"));
      CHECK(test::contains(e.what(), bad.fragment));
    }
  }
  CHECK_THROWS_AS(loadFacts(test::dataPath("facts/no-such.facts"),
                            OntologySide::Source, test::miniEnv()),
                  Error);
}

TEST_CASE("the bundled sample fact files load on their own sides") {
  PrefixEnv env = test::miniEnv();
  FactStore source = loadFacts(test::dataPath("facts/sample-source.facts"),
                               OntologySide::Source, env);
  FactStore target = loadFacts(test::dataPath("facts/sample-target.facts"),
                               OntologySide::Target, env);
  CHECK(source.facts.size() > 5);
  CHECK(target.facts.size() > 5);
  CHECK(target.side == OntologySide::Target);
}

TEST_CASE("evaluate answers type queries with sorted distinct rows") {
  FactStore store = sourceFacts(
      "paper2 a Accepted_Paper .\n"
      "paper1 a Accepted_Paper .\n"
      "paper1 writtenBy alice .\n");
  ResultSet result = evaluate(
      sourceQuery(
          "SELECT DISTINCT ?x WHERE { ?x a onto_Source:Accepted_Paper . }"),
      store);
  CHECK(result.header == std::vector<std::string>{"x"});
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0] == std::vector<Term>{iri("paper1")});
  CHECK(result.rows[1] == std::vector<Term>{iri("paper2")});
}

TEST_CASE("evaluate joins triples on shared variables") {
  FactStore store = sourceFacts(
      "paper1 a Accepted_Paper .\n"
      "paper2 a Accepted_Paper .\n"
      "paper1 writtenBy alice .\n"
      "poster1 writtenBy bob .\n");
  ResultSet result = evaluate(
      sourceQuery("SELECT DISTINCT ?x ?y WHERE {\n"
                  "  ?x a onto_Source:Accepted_Paper .\n"
                  "  ?x onto_Source:writtenBy ?y .\n"
                  "}"),
      store);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0] == std::vector<Term>{iri("paper1"), iri("alice")});
}

TEST_CASE("union branches join with the outer triples on shared variables") {
  FactStore store = sourceFacts(
      "paper1 a Accepted_Paper .\n"
      "poster1 a Poster .\n"
      "paper1 writtenBy alice .\n"
      "poster1 writtenBy carol .\n"
      "talk1 writtenBy dave .\n");
  ResultSet result = evaluate(
      sourceQuery("SELECT DISTINCT ?x ?y WHERE {\n"
                  "  ?x onto_Source:writtenBy ?y .\n"
                  "  { ?x a onto_Source:Accepted_Paper . }\n"
                  "  UNION { ?x a onto_Source:Poster . }\n"
                  "}"),
      store);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0] == std::vector<Term>{iri("paper1"), iri("alice")});
  CHECK(result.rows[1] == std::vector<Term>{iri("poster1"), iri("carol")});
}

TEST_CASE("DISTINCT collapses solutions that only differ off-projection") {
  FactStore store = sourceFacts(
      "paper1 writtenBy alice .\n"
      "paper1 writtenBy bob .\n");
  ResultSet result = evaluate(
      sourceQuery("SELECT DISTINCT ?x WHERE { ?x onto_Source:writtenBy ?y . "
                  "}"),
      store);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0] == std::vector<Term>{iri("paper1")});
}

TEST_CASE("projection cells a branch leaves unbound keep the variable") {
  FactStore store = sourceFacts(
      "paper1 a Accepted_Paper .\n"
      "poster1 writtenBy carol .\n");
  ResultSet result = evaluate(
      sourceQuery("SELECT DISTINCT ?x ?z WHERE {\n"
                  "  { ?x a onto_Source:Accepted_Paper . }\n"
                  "  UNION { ?x onto_Source:writtenBy ?z . }\n"
                  "}"),
      store);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0] ==
        std::vector<Term>{iri("paper1"), Term::variable("z")});
  CHECK(result.rows[1] == std::vector<Term>{iri("poster1"), iri("carol")});
}

TEST_CASE("a query over an empty store has no rows") {
  FactStore store;
  store.side = OntologySide::Source;
  ResultSet result = evaluate(
      sourceQuery("SELECT DISTINCT ?x WHERE { ?x a onto_Source:Poster . }"),
      store);
  CHECK(result.header == std::vector<std::string>{"x"});
  CHECK(result.rows.empty());
}

//// Brute-force evaluation oracle ///////////////////////////////////////////

namespace {

// Evaluates via disjunctive normal form: one conjunct per union branch (or
// the bare triples), every variable assigned over the store's term universe.
ResultSet oracleEvaluate(const SelectQuery& query, const FactStore& store) {
  std::set<Term> universe;
  for (const auto& fact : store.facts) {
    universe.insert(fact.subject);
    universe.insert(fact.object);
  }
  std::vector<std::vector<TriplePattern>> conjuncts;
  if (query.where.unionBranches.empty()) {
    conjuncts.push_back(query.where.triples);
  } else {
    for (const auto& branch : query.where.unionBranches) {
      std::vector<TriplePattern> conjunct = query.where.triples;
      conjunct.insert(conjunct.end(), branch.triples.begin(),
                      branch.triples.end());
      conjuncts.push_back(std::move(conjunct));
    }
  }
  std::set<std::vector<Term>> rows;
  for (const auto& conjunct : conjuncts) {
    std::vector<std::string> vars;
    for (const auto& t : conjunct) {
      for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
        if (term->kind == Term::Kind::Variable &&
            std::find(vars.begin(), vars.end(), term->var) == vars.end()) {
          vars.push_back(term->var);
        }
      }
    }
    std::vector<Term> pool(universe.begin(), universe.end());
    std::vector<size_t> choice(vars.size(), 0);
    bool done = vars.empty() ? false : pool.empty();
    while (!done) {
      std::map<std::string, Term> assignment;
      for (size_t i = 0; i < vars.size(); ++i)
        assignment.emplace(vars[i], pool[choice[i]]);
      bool holds = true;
      for (const auto& triple : conjunct) {
        auto ground = [&assignment](const Term& term) {
          if (term.kind != Term::Kind::Variable) return term;
          return assignment.at(term.var);
        };
        TriplePattern instance{ground(triple.subject),
                               ground(triple.predicate),
                               ground(triple.object)};
        if (std::find(store.facts.begin(), store.facts.end(), instance) ==
            store.facts.end()) {
          holds = false;
          break;
        }
      }
      if (holds) {
        std::vector<Term> row;
        for (const auto& name : query.projection) {
          auto it = assignment.find(name);
          row.push_back(it == assignment.end() ? Term::variable(name)
                                               : it->second);
        }
        rows.insert(std::move(row));
      }
      if (vars.empty()) break;
      size_t k = 0;
      while (k < choice.size() && ++choice[k] == pool.size()) {
        choice[k] = 0;
        ++k;
      }
      if (k == choice.size()) done = true;
    }
  }
  ResultSet result;
  result.header = query.projection;
  result.rows.assign(rows.begin(), rows.end());
  return result;
}

TriplePattern randomFact(std::mt19937& rng) {
  static const char* const subjects[] = {"i1", "i2", "i3"};
  static const char* const classes[] = {"Alpha", "Beta"};
  static const char* const props[] = {"hasPart", "linked_to"};
  Term subject = iri(subjects[rng() % 3]);
  if (rng() % 2 == 0) {
    return TriplePattern{subject, Term::rdfType(), iri(classes[rng() % 2])};
  }
  Term object = rng() % 4 == 0
                    ? Term::literal(Literal::integer(static_cast<long>(
                          rng() % 2)))
                    : iri(subjects[rng() % 3]);
  return TriplePattern{subject, Term::entity(EntityIri{OntologySide::Source,
                                                       "onto_Source",
                                                       props[rng() % 2]}),
                       object};
}

TriplePattern randomQueryTriple(std::mt19937& rng, bool forceVarSubject) {
  static const char* const vars[] = {"x", "y", "z"};
  static const char* const subjects[] = {"i1", "i2", "i3"};
  static const char* const classes[] = {"Alpha", "Beta"};
  static const char* const props[] = {"hasPart", "linked_to"};
  Term subject = forceVarSubject || rng() % 2 == 0
                     ? Term::variable(vars[rng() % 3])
                     : iri(subjects[rng() % 3]);
  if (rng() % 2 == 0) {
    Term object = rng() % 3 == 0 ? Term::variable(vars[rng() % 3])
                                 : iri(classes[rng() % 2]);
    return TriplePattern{subject, Term::rdfType(), object};
  }
  unsigned pick = rng() % 4;
  Term object = pick == 0 ? Term::literal(Literal::integer(
                                static_cast<long>(rng() % 2)))
                          : (pick == 1 ? iri(subjects[rng() % 3])
                                       : Term::variable(vars[rng() % 3]));
  return TriplePattern{subject, Term::entity(EntityIri{OntologySide::Source,
                                                       "onto_Source",
                                                       props[rng() % 2]}),
                       object};
}

}  // namespace

TEST_CASE("evaluate equals the brute-force oracle on 150 random cases") {
  std::mt19937 rng(20260814);
  for (int iteration = 0; iteration < 150; ++iteration) {
    CAPTURE(iteration);
    FactStore store;
    store.side = OntologySide::Source;
    size_t factCount = 3 + rng() % 6;
    for (size_t i = 0; i < factCount; ++i) store.add(randomFact(rng));

    SelectQuery query;
    size_t tripleCount = 1 + rng() % 3;
    for (size_t i = 0; i < tripleCount; ++i) {
      query.where.triples.push_back(randomQueryTriple(rng, i == 0));
    }
    if (rng() % 5 < 2) {
      for (int b = 0; b < 2; ++b) {
        GroupPattern branch;
        size_t branchTriples = 1 + rng() % 2;
        for (size_t i = 0; i < branchTriples; ++i) {
          branch.triples.push_back(randomQueryTriple(rng, i == 0));
        }
        query.where.unionBranches.push_back(std::move(branch));
      }
    }
    for (const auto& name : queryVariables(query)) {
      query.projection.push_back(name);
    }
    REQUIRE(!query.projection.empty());

    ResultSet expected = oracleEvaluate(query, store);
    ResultSet actual = evaluate(query, store);
    CHECK(actual.header == expected.header);
    CHECK(actual.rows == expected.rows);
  }
}

//// Paired instance generation //////////////////////////////////////////////

namespace {

std::vector<Correspondence> fixtureClosure() {
  Alignment a = loadAlignment(test::dataPath("ekaw-edas-mini.align.json"));
  return closeAlignment(a.correspondences);
}

size_t countTypeFacts(const FactStore& store, const std::string& local) {
  size_t count = 0;
  for (const auto& fact : store.facts) {
    if (fact.predicate == Term::rdfType() &&
        fact.object.kind == Term::Kind::Iri && fact.object.iri.local == local)
      ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("generateAlignedPair is deterministic for a fixed seed") {
  std::vector<Correspondence> closure = fixtureClosure();
  PrefixEnv env = test::miniEnv();
  GeneratedPair a = generateAlignedPair(closure, 6, 7, env);
  GeneratedPair b = generateAlignedPair(closure, 6, 7, env);
  CHECK(a.source.facts == b.source.facts);
  CHECK(a.target.facts == b.target.facts);
  GeneratedPair c = generateAlignedPair(closure, 6, 8, env);
  CHECK(a.source.facts != c.source.facts);
}

TEST_CASE("generated stores instantiate every component on both sides") {
  std::vector<Correspondence> closure = fixtureClosure();
  PrefixEnv env = test::miniEnv();
  GeneratedPair pair = generateAlignedPair(closure, 4, 42, env);
  CHECK(pair.warnings.empty());
  CHECK(pair.skipped.empty());

  // 10 components, one of them a property; composite members add facts on
  // top of the four type facts per individual, plus two noise individuals.
  CHECK(pair.source.facts.size() == 54);
  CHECK(pair.target.facts.size() == 62);

  CHECK(countTypeFacts(pair.source, "Unaligned_Thing") == 2);
  CHECK(countTypeFacts(pair.target, "UnalignedThing") == 2);
  CHECK(countTypeFacts(pair.source, "Conference_Banquet") == 4);
  CHECK(countTypeFacts(pair.target, "ConferenceDinner") == 4);
  CHECK(countTypeFacts(pair.source, "Event") == 4);
  // The disjunction spreads its four individuals over the three disjuncts.
  CHECK(countTypeFacts(pair.target, "Conference") == 2);
  CHECK(countTypeFacts(pair.target, "ConferenceEvent") == 1);
  CHECK(countTypeFacts(pair.target, "ConferenceSession") == 1);
  // Workshop papers gain a filler individual typed Workshop.
  CHECK(countTypeFacts(pair.target, "Workshop") == 4);

  // Aligned individuals share local names across the two stores.
  std::set<std::string> sourceSubjects;
  for (const auto& fact : pair.source.facts)
    sourceSubjects.insert(fact.subject.iri.local);
  std::set<std::string> targetSubjects;
  for (const auto& fact : pair.target.facts)
    targetSubjects.insert(fact.subject.iri.local);
  size_t shared = 0;
  for (const auto& local : sourceSubjects) shared += targetSubjects.count(local);
  CHECK(shared >= 4 * 10 / 2);

  // Property components pair a subject and object per individual slot.
  size_t writtenBy = 0;
  size_t authoredBy = 0;
  for (const auto& fact : pair.source.facts) {
    if (fact.predicate.kind == Term::Kind::Iri &&
        fact.predicate.iri.local == "writtenBy") {
      ++writtenBy;
      CHECK(test::contains(fact.subject.iri.local, "_s"));
      CHECK(test::contains(fact.object.iri.local, "_o"));
    }
  }
  for (const auto& fact : pair.target.facts) {
    if (fact.predicate.kind == Term::Kind::Iri &&
        fact.predicate.iri.local == "authoredBy")
      ++authoredBy;
  }
  CHECK(writtenBy == 4);
  CHECK(authoredBy == 4);
}

TEST_CASE("rewrites of generated pairs agree for every fixture entry") {
  std::vector<Correspondence> closure = fixtureClosure();
  PrefixEnv env = test::miniEnv();
  AlignmentDictionary dict = buildDictionary(closure);
  GeneratedPair pair = generateAlignedPair(closure, 9, 20260814, env);
  size_t checked = 0;
  for (const auto& c : closure) {
    if (!c.crossSide()) continue;
    SelectQuery source = c.property
                             ? propertyQuery(c.source.entity(), env)
                             : patternQuery(c.source, env);
    std::vector<RewriteResult> rewrites = rewriteQuery(source, dict, env);
    REQUIRE(!rewrites.empty());
    ResultSet sourceRows = evaluate(source, pair.source);
    OracleOutcome outcome =
        compareResults(sourceRows, evaluate(rewrites[0].query, pair.target));
    CAPTURE(correspondenceLabel(c));
    CHECK(outcome.pass);
    ++checked;
  }
  CHECK(checked == 13);
}

TEST_CASE("components with universal restrictions are skipped as a whole") {
  PrefixEnv env = test::miniEnv();
  Alignment a = parseAlignment(R"({
    "source_prefixes": {"onto_Source": "http://example.org/onto/ekaw#"},
    "target_prefixes": {"target_onto": "http://example.org/onto/edas#"},
    "correspondences": [
      {"source": "hasDecision only Acceptance", "target": "Decided"},
      {"source": "Poster", "target": "PosterPaper"}
    ]})");
  GeneratedPair pair = generateAlignedPair(a.correspondences, 4, 1, env);
  REQUIRE(pair.warnings.size() == 1);
  CHECK(test::contains(
      pair.warnings[0],
      "universal or cardinality restriction cannot be instantiated"));
  CHECK(pair.skipped ==
        std::set<std::string>{"onto_Source:hasDecision only "
                              "onto_Source:Acceptance = target_onto:Decided"});
  CHECK(countTypeFacts(pair.source, "Poster") == 4);
  // Only the poster component and the noise individuals remain.
  CHECK(pair.source.facts.size() == 6);
  CHECK(pair.target.facts.size() == 6);

  GeneratedPair allSkipped = generateAlignedPair(
      {a.correspondences.front()}, 1, 1, env);
  CHECK(allSkipped.source.facts.empty());
  CHECK(allSkipped.target.facts.empty());
  CHECK(allSkipped.skipped.size() == 1);

  CHECK_THROWS_AS(generateAlignedPair(a.correspondences, 0, 1, env), Error);
}

//// Result comparison ///////////////////////////////////////////////////////

namespace {

ResultSet makeResult(std::vector<std::string> header,
                     std::vector<std::vector<Term>> rows) {
  ResultSet rs;
  rs.header = std::move(header);
  rs.rows = std::move(rows);
  return rs;
}

Term tgt(const char* local) {
  return Term::entity(EntityIri{OntologySide::Target, "target_onto", local});
}

}  // namespace

TEST_CASE("compareResults matches IRIs across sides by local name") {
  ResultSet source = makeResult({"v1"}, {{iri("i1")}, {iri("i2")}});
  ResultSet target = makeResult({"v1"}, {{tgt("i2")}, {tgt("i1")}});
  OracleOutcome outcome = compareResults(source, target);
  CHECK(outcome.pass);
  CHECK(outcome.detail.empty());
}

TEST_CASE("compareResults reports row-count mismatches first") {
  ResultSet source = makeResult({"v1"}, {{iri("i1")}});
  ResultSet target = makeResult({"v1"}, {{tgt("i1")}, {tgt("i2")}});
  OracleOutcome outcome = compareResults(source, target);
  CHECK_FALSE(outcome.pass);
  CHECK(outcome.detail == "row count 1 vs 2");
}

TEST_CASE("compareResults only projects the shared header columns") {
  ResultSet source =
      makeResult({"v1", "v2"}, {{iri("i1"), iri("x1")}, {iri("i2"), iri("x2")}});
  ResultSet target = makeResult({"v1"}, {{tgt("i1")}, {tgt("i2")}});
  CHECK(compareResults(source, target).pass);

  // Without any shared column, equal row counts are all that can be checked.
  ResultSet other = makeResult({"v9"}, {{tgt("a")}, {tgt("b")}});
  CHECK(compareResults(source, other).pass);
}

TEST_CASE("compareResults details the differing rows") {
  ResultSet source = makeResult({"v1"}, {{iri("i1")}, {iri("i3")}});
  ResultSet target = makeResult({"v1"}, {{tgt("i1")}, {tgt("i9")}});
  OracleOutcome outcome = compareResults(source, target);
  CHECK_FALSE(outcome.pass);
  CHECK(test::contains(outcome.detail, "rows differ on shared variables"));
  CHECK(test::contains(outcome.detail, "source-only: (~i3)"));
  CHECK(test::contains(outcome.detail, "target-only: (~i9)"));
}

TEST_CASE("compareResults distinguishes literals, variables, and IRIs") {
  CHECK(compareResults(
            makeResult({"v1"}, {{Term::literal(Literal::integer(12))}}),
            makeResult({"v1"}, {{Term::literal(Literal::integer(12))}}))
            .pass);
  CHECK_FALSE(compareResults(
                  makeResult({"v1"}, {{Term::literal(Literal::integer(12))}}),
                  makeResult({"v1"}, {{tgt("12")}}))
                  .pass);
  CHECK(compareResults(makeResult({"v1"}, {{Term::variable("z")}}),
                       makeResult({"v1"}, {{Term::variable("z")}}))
            .pass);
  CHECK_FALSE(compareResults(makeResult({"v1"}, {{Term::variable("z")}}),
                             makeResult({"v1"}, {{Term::variable("w")}}))
                  .pass);
}
