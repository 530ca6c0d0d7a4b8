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
#include "alignrw/NlMatcher.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "alignrw/ClassExpression.h"
#include "alignrw/Errors.h"
#include "httplib.h"
#include "json.hpp"

namespace alignrw {

namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "a",       "about",   "after",   "all",     "also",    "am",
      "an",      "and",     "any",     "are",     "as",      "at",
      "be",      "because", "been",    "before",  "being",   "between",
      "both",    "but",     "by",      "can",     "could",   "did",
      "different", "do",    "does",    "doing",   "down",    "during",
      "each",    "exist",   "exists",  "few",     "for",     "from",
      "further", "had",     "has",     "have",    "having",  "he",
      "her",     "here",    "hers",    "him",     "his",     "how",
      "i",       "if",      "in",      "information", "into", "is",
      "it",      "its",     "just",    "kind",    "kinds",   "let",
      "like",    "list",    "may",     "me",      "might",   "more",
      "most",    "much",    "must",    "my",      "no",      "nor",
      "not",     "now",     "of",      "off",     "on",      "once",
      "only",    "or",      "other",   "our",     "out",     "over",
      "own",     "please",  "provide", "same",    "shall",   "she",
      "should",  "so",      "some",    "such",    "tell",    "term",
      "terms",   "than",    "that",    "the",     "their",   "theirs",
      "them",    "then",    "there",   "these",   "they",    "this",
      "those",   "through", "to",      "too",     "type",    "types",
      "under",   "until",   "up",      "upon",    "us",      "used",
      "various", "very",    "was",     "we",      "were",    "what",
      "when",    "where",   "which",   "while",   "who",     "whom",
      "why",     "will",    "with",    "would",   "you",     "your",
      "yours"};
  return words;
}

bool endsWith(const std::string& s, const char* suffix) {
  size_t n = std::char_traits<char>::length(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

std::string stemOnce(const std::string& token) {
  static const char* const suffixes[] = {"ing", "es", "ed", "s"};
  if (endsWith(token, "ss")) return token;
  for (const char* suffix : suffixes) {
    size_t n = std::char_traits<char>::length(suffix);
    if (token.size() >= n + 3 && endsWith(token, suffix)) {
      return token.substr(0, token.size() - n);
    }
  }
  return token;
}

std::vector<std::string> rawTokens(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<std::pair<std::string, double>> externalRanking(
    const std::string& url, const NormalizedQuestion& question,
    const AlignmentDictionary& dict) {
  nlohmann::json request;
  request["question"] = question.original;
  request["candidates"] = nlohmann::json::array();
  std::vector<std::string> keys;
  int id = 0;
  for (const auto& [key, entry] : dict.entries()) {
    nlohmann::json candidate;
    candidate["id"] = id++;
    candidate["expression"] = key;
    candidate["tokens"] = labelTokens(entry.key);
    request["candidates"].push_back(std::move(candidate));
    keys.push_back(key);
  }

  httplib::Client client(url);
  client.set_connection_timeout(2, 0);
  client.set_read_timeout(2, 0);
  auto response = client.Post("/match", request.dump(), "application/json");
  if (!response || response->status != 200) {
    throw Error("external matcher did not answer");
  }
  nlohmann::json body = nlohmann::json::parse(response->body);
  std::vector<std::pair<std::string, double>> ranked;
  for (const auto& item : body.at("ranked")) {
    size_t candidateId = item.at("id").get<size_t>();
    if (candidateId >= keys.size()) {
      throw Error("external matcher returned an unknown candidate id");
    }
    ranked.emplace_back(keys[candidateId], item.at("score").get<double>());
  }
  if (ranked.empty()) throw Error("external matcher returned no ranking");
  return ranked;
}

}  // namespace

Lexicon Lexicon::fromText(const std::string& text) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> members;
    std::string member;
    std::istringstream fields(line);
    while (std::getline(fields, member, '\t')) {
      std::transform(member.begin(), member.end(), member.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (!member.empty()) members.push_back(member);
    }
    if (members.size() < 2) continue;
    size_t group = lex.groups_.size();
    for (const auto& m : members) {
      lex.index_.emplace(m, group);
      lex.index_.emplace(stemToken(m), group);
    }
    lex.groups_.push_back(std::move(members));
  }
  return lex;
}

Lexicon Lexicon::loadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fromText(buffer.str());
}

const std::vector<std::string>* Lexicon::groupOf(
    const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return nullptr;
  return &groups_[it->second];
}

bool isStopword(const std::string& token) {
  return stopwords().count(token) > 0;
}

std::string stemToken(const std::string& token) {
  std::string current = token;
  while (true) {
    std::string next = stemOnce(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

NormalizedQuestion normalizeQuestion(const std::string& text,
                                     const Lexicon& lexicon) {
  NormalizedQuestion out;
  out.original = text;
  for (const auto& raw : rawTokens(text)) {
    if (isStopword(raw)) continue;
    std::string stemmed = stemToken(raw);
    if (isStopword(stemmed)) continue;
    out.tokens.push_back(stemmed);
  }
  if (out.tokens.empty()) {
    throw NoMatchError("question contains no content words", {});
  }
  for (const auto& token : out.tokens) {
    out.expanded.insert(token);
    if (const auto* group = lexicon.groupOf(token)) {
      out.expanded.insert(group->begin(), group->end());
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> scoreCandidates(
    const NormalizedQuestion& question, const AlignmentDictionary& dict) {
  std::vector<std::pair<std::string, double>> ranked;
  for (const auto& [key, entry] : dict.entries()) {
    std::set<std::string> label;
    for (const auto& token : labelTokens(entry.key)) label.insert(token);
    size_t common = 0;
    for (const auto& token : label) common += question.expanded.count(token);
    size_t total = label.size() + question.expanded.size() - common;
    double score = total == 0 ? 0.0
                              : static_cast<double>(common) /
                                    static_cast<double>(total);
    if (!label.empty() && common == label.size()) {
      score = std::min(1.0, score + 0.1);
    }
    ranked.emplace_back(key, score);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return ranked;
}

MatchResult matchKey(const NormalizedQuestion& question,
                     const AlignmentDictionary& dict, double threshold,
                     const std::string& externalUrl) {
  MatchResult result;
  if (!externalUrl.empty()) {
    try {
      auto ranked = externalRanking(externalUrl, question, dict);
      if (ranked.front().second >= threshold) {
        const DictEntry* entry = dict.lookupSerialized(ranked.front().first);
        if (entry == nullptr) {
          throw Error("external matcher picked a key missing locally");
        }
        result.entry = entry;
        result.score = ranked.front().second;
        result.ranked = std::move(ranked);
        return result;
      }
      result.warnings.push_back(
          "external matcher found no confident key; using lexical scoring");
    } catch (const std::exception& e) {
      result.warnings.push_back(std::string(e.what()) +
                                "; falling back to lexical scoring");
    }
  }
  auto ranked = scoreCandidates(question, dict);
  if (ranked.empty() || ranked.front().second < threshold) {
    std::vector<std::pair<std::string, double>> top;
    for (size_t i = 0; i < ranked.size() && i < 3; ++i)
      top.push_back(ranked[i]);
    throw NoMatchError("no confident match for the question", top);
  }
  result.entry = dict.lookupSerialized(ranked.front().first);
  result.score = ranked.front().second;
  result.ranked = std::move(ranked);
  return result;
}

}  // namespace alignrw
