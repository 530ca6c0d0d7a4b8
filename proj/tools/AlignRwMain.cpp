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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "alignrw/Alignment.h"
#include "alignrw/ClassExpression.h"
#include "alignrw/Closure.h"
#include "alignrw/Errors.h"
#include "alignrw/MiniEval.h"
#include "alignrw/NlMatcher.h"
#include "alignrw/RewriteEngine.h"
#include "alignrw/SparqlAst.h"

namespace {

using namespace alignrw;

constexpr int kExitOk = 0;
constexpr int kExitLoad = 2;
constexpr int kExitUnmapped = 3;
constexpr int kExitNoMatch = 4;
constexpr int kExitOracle = 5;

struct CommonOptions {
  std::string alignmentPath;
  double minConfidence = 0.0;
  bool invert = false;
  std::string outPath;
};

void addCommonOptions(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--alignment", opts.alignmentPath, "alignment file (JSON)")
      ->required();
  cmd->add_option("--min-confidence", opts.minConfidence,
                  "drop derived correspondences below this confidence")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--invert", opts.invert,
                "swap the source and target ontologies");
  cmd->add_option("--out", opts.outPath,
                  "write output to this file instead of stdout");
}

// Output sink: stdout unless --out was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Alignment loadForRun(const CommonOptions& opts) {
  Alignment alignment = loadAlignment(opts.alignmentPath);
  if (opts.invert) alignment = alignment.inverted();
  return alignment;
}

std::string formatScore(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string externalMatcherUrl() {
  const char* url = std::getenv("ALIGNRW_MATCHER_URL");
  return url == nullptr ? std::string() : std::string(url);
}

Lexicon loadLexicon(const std::string& explicitPath,
                    const std::string& alignmentPath) {
  if (!explicitPath.empty()) return Lexicon::loadFile(explicitPath);
  std::filesystem::path bundled =
      std::filesystem::path(alignmentPath).parent_path() / "synonyms.tsv";
  std::error_code ec;
  if (std::filesystem::exists(bundled, ec)) {
    return Lexicon::loadFile(bundled.string());
  }
  return Lexicon{};
}

nlohmann::ordered_json reportJson(const RewriteReport& report) {
  nlohmann::ordered_json out;
  out["applied"] = nlohmann::ordered_json::array();
  for (const auto& a : report.applied) {
    nlohmann::ordered_json item;
    item["source"] = serializeClassExpression(a.correspondence.source);
    item["target"] = serializeClassExpression(a.correspondence.target);
    item["confidence"] = a.correspondence.confidence;
    item["origin"] =
        a.correspondence.origin == Origin::Derived ? "derived" : "asserted";
    if (a.correspondence.property) item["type"] = "property";
    if (!a.anchorVariable.empty()) item["anchor"] = a.anchorVariable;
    item["consumed"] = a.consumed;
    out["applied"].push_back(std::move(item));
  }
  out["dropped_variables"] = report.droppedVariables;
  out["unmapped_iris"] = report.unmappedIris;
  out["warnings"] = report.warnings;
  out["confidence_product"] = report.confidenceProduct;
  return out;
}

int runClosure(const CommonOptions& opts) {
  Alignment alignment = loadForRun(opts);
  std::vector<Correspondence> closed =
      closeAlignment(alignment.correspondences, opts.minConfidence);
  Output out(opts.outPath);
  out.stream() << serializeAlignment(alignment.prefixes, closed);
  return kExitOk;
}

int runValidate(const CommonOptions& opts) {
  Alignment alignment = loadForRun(opts);
  Output out(opts.outPath);
  std::ostream& os = out.stream();
  for (const auto& entry : alignment.prefixes.source.entries()) {
    os << "source prefix " << entry.first << ": <" << entry.second << ">\n";
  }
  for (const auto& entry : alignment.prefixes.target.entries()) {
    os << "target prefix " << entry.first << ": <" << entry.second << ">\n";
  }
  for (const auto& c : alignment.correspondences) {
    os << patternKindName(classifyPattern(c)) << " "
       << serializeClassExpression(c.source) << " = "
       << serializeClassExpression(c.target) << " ("
       << formatScore(c.confidence) << ")"
       << (c.origin == Origin::Derived ? " [derived]" : "")
       << (c.crossSide() ? "" : " [same-side axiom]") << "\n";
  }
  os << "OK: " << alignment.correspondences.size() << " correspondences\n";
  return kExitOk;
}

int runRewrite(const CommonOptions& opts, const std::string& queryPath,
               bool strict, bool report) {
  Alignment alignment = loadForRun(opts);
  std::ifstream in(queryPath);
  if (!in) throw Error("cannot open query file '" + queryPath + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();

  SelectQuery query = parseSelect(buffer.str(), alignment.prefixes);
  AlignmentDictionary dict = buildDictionary(
      closeAlignment(alignment.correspondences, opts.minConfidence));
  RewriteOptions rewriteOpts;
  rewriteOpts.strict = strict;
  std::vector<RewriteResult> results =
      rewriteQuery(query, dict, alignment.prefixes, rewriteOpts);

  Output out(opts.outPath);
  std::ostream& os = out.stream();
  for (size_t i = 0; i < results.size(); ++i) {
    if (i > 0) os << "\n";
    os << serializeSelect(results[i].query);
    if (report) {
      os << "# report " << reportJson(results[i].report).dump() << "\n";
    }
  }
  return kExitOk;
}

int runAsk(const CommonOptions& opts, const std::string& question,
           double threshold, const std::string& lexiconPath) {
  Alignment alignment = loadForRun(opts);
  AlignmentDictionary dict = buildDictionary(
      closeAlignment(alignment.correspondences, opts.minConfidence));
  Lexicon lexicon = loadLexicon(lexiconPath, opts.alignmentPath);

  NormalizedQuestion normalized = normalizeQuestion(question, lexicon);
  MatchResult match =
      matchKey(normalized, dict, threshold, externalMatcherUrl());
  for (const auto& warning : match.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }

  QueryPair pair =
      generateQueryPair(match.entry->key, dict, alignment.prefixes);
  Output out(opts.outPath);
  std::ostream& os = out.stream();
  os << "Matched key (score " << formatScore(match.score)
     << "): " << serializeClassExpression(match.entry->key) << "\n";
  os << "Source query:\n" << serializeSelect(pair.source);
  for (size_t i = 0; i < pair.targets.size(); ++i) {
    os << "Target query " << (i + 1) << " of " << pair.targets.size()
       << " (confidence " << formatScore(pair.targets[i].second) << "):\n"
       << serializeSelect(pair.targets[i].first);
  }
  for (const auto& warning : pair.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  return kExitOk;
}

int runEval(const CommonOptions& opts, int instances, unsigned int seed,
            bool strict, const std::string& factsAlignmentPath) {
  Alignment alignment = loadForRun(opts);
  std::vector<Correspondence> closed =
      closeAlignment(alignment.correspondences, opts.minConfidence);
  AlignmentDictionary dict = buildDictionary(closed);

  // Facts may come from a second alignment file so a corrupted alignment can
  // be checked against pristine data.
  std::vector<Correspondence> factsClosure = closed;
  PrefixEnv factsEnv = alignment.prefixes;
  if (!factsAlignmentPath.empty()) {
    Alignment factsAlignment = loadAlignment(factsAlignmentPath);
    if (opts.invert) factsAlignment = factsAlignment.inverted();
    factsClosure =
        closeAlignment(factsAlignment.correspondences, opts.minConfidence);
    factsEnv = factsAlignment.prefixes;
  }
  GeneratedPair pair =
      generateAlignedPair(factsClosure, instances, seed, factsEnv);
  for (const auto& warning : pair.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }

  Output out(opts.outPath);
  std::ostream& os = out.stream();
  int checked = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  RewriteOptions rewriteOpts;
  rewriteOpts.strict = strict;
  for (const auto& c : closed) {
    if (!c.crossSide()) continue;
    std::string label = correspondenceLabel(c);
    if (pair.skipped.count(label)) {
      ++skipped;
      os << "SKIP " << label << ": restriction not instantiable\n";
      continue;
    }
    ++checked;
    SelectQuery sourceQuery =
        c.property ? propertyQuery(c.source.entity(), alignment.prefixes)
                   : patternQuery(c.source, alignment.prefixes);
    ResultSet sourceRows = evaluate(sourceQuery, pair.source);
    bool ok = true;
    std::string detail;
    try {
      std::vector<RewriteResult> rewrites =
          rewriteQuery(sourceQuery, dict, alignment.prefixes, rewriteOpts);
      for (size_t i = 0; i < rewrites.size() && ok; ++i) {
        ResultSet targetRows = evaluate(rewrites[i].query, pair.target);
        OracleOutcome outcome = compareResults(sourceRows, targetRows);
        if (!outcome.pass) {
          ok = false;
          detail = "rewrite " + std::to_string(i + 1) + " of " +
                   std::to_string(rewrites.size()) + ": " + outcome.detail;
        }
      }
      if (ok) {
        ++passed;
        os << "PASS " << label << " [" << rewrites.size()
           << (rewrites.size() == 1 ? " rewrite]" : " rewrites]") << "\n";
      }
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    if (!ok) {
      ++failed;
      os << "FAIL " << label << ": " << detail << "\n";
    }
  }
  os << "eval: " << checked << " checked, " << passed << " passed, " << failed
     << " failed, " << skipped << " skipped (seed " << seed << ", "
     << instances << " instances)\n";
  return failed == 0 ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "alignrw: rewrite SPARQL queries across aligned ontologies, derive "
      "correspondences by equivalence transitivity, and check rewrites "
      "against generated facts"};
  app.require_subcommand(1);

  CommonOptions common;

  CLI::App* closureCmd = app.add_subcommand(
      "closure", "print the alignment including derived correspondences");
  addCommonOptions(closureCmd, common);

  CLI::App* validateCmd =
      app.add_subcommand("validate", "check an alignment file and list it");
  addCommonOptions(validateCmd, common);

  CLI::App* rewriteCmd = app.add_subcommand(
      "rewrite", "rewrite a source-vocabulary query into target vocabulary");
  std::string queryPath;
  bool strict = true;
  bool report = false;
  addCommonOptions(rewriteCmd, common);
  rewriteCmd->add_option("query", queryPath, "query file")->required();
  rewriteCmd->add_flag("--strict,!--lenient", strict,
                       "fail when source vocabulary survives (default)");
  rewriteCmd->add_flag("--report", report,
                       "append a JSON report to each rewritten query");

  CLI::App* askCmd = app.add_subcommand(
      "ask", "turn a natural-language question into a query pair");
  std::string question;
  double threshold = 0.2;
  std::string lexiconPath;
  addCommonOptions(askCmd, common);
  askCmd->add_option("question", question, "the question text")->required();
  askCmd->add_option("--threshold", threshold,
                     "minimum match score to accept a key")
      ->check(CLI::Range(0.0, 1.0));
  askCmd->add_option("--lexicon", lexiconPath,
                     "synonym file (default: synonyms.tsv beside the "
                     "alignment file)");

  CLI::App* evalCmd = app.add_subcommand(
      "eval", "generate aligned facts and compare rewrite result sets");
  int instances = 25;
  unsigned int seed = 42;
  std::string factsAlignmentPath;
  bool evalStrict = true;
  addCommonOptions(evalCmd, common);
  evalCmd->add_option("--instances", instances,
                      "individuals per equivalence component")
      ->check(CLI::PositiveNumber);
  evalCmd->add_option("--seed", seed, "random seed for fact generation");
  evalCmd->add_flag("--strict,!--lenient", evalStrict,
                    "strict rewriting while checking (default)");
  evalCmd->add_option("--facts-alignment", factsAlignmentPath,
                      "generate facts from this alignment instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (closureCmd->parsed()) return runClosure(common);
    if (validateCmd->parsed()) return runValidate(common);
    if (rewriteCmd->parsed())
      return runRewrite(common, queryPath, strict, report);
    if (askCmd->parsed())
      return runAsk(common, question, threshold, lexiconPath);
    if (evalCmd->parsed())
      return runEval(common, instances, seed, evalStrict,
                     factsAlignmentPath);
  } catch (const UnmappedVocabularyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& iri : e.iris) std::cerr << "  unmapped: " << iri << "\n";
    return kExitUnmapped;
  } catch (const EmptyProjectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnmapped;
  } catch (const NoMatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& [key, score] : e.topCandidates) {
      std::cerr << "  candidate (score " << formatScore(score) << "): " << key
                << "\n";
    }
    return kExitNoMatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  }
  return kExitOk;
}
