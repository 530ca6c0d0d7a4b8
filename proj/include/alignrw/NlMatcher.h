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
#ifndef ALIGNRW_NL_MATCHER_H
#define ALIGNRW_NL_MATCHER_H

#include <map>
#include <set>
#include <string>
#include <vector>

#include "alignrw/Alignment.h"

namespace alignrw {

/// Synonym groups loaded from a tab-separated file: one group per line,
/// members separated by tabs, '#' starts a comment line. Members are indexed
/// both raw and stemmed, so an inflected question token still finds its
/// group.
class Lexicon {
 public:
  static Lexicon loadFile(const std::string& path);
  static Lexicon fromText(const std::string& text);

  // Raw members of the group `token` belongs to; empty if none.
  const std::vector<std::string>* groupOf(const std::string& token) const;
  size_t groupCount() const { return groups_.size(); }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::map<std::string, size_t> index_;
};

bool isStopword(const std::string& token);

/// Light suffix stripping (-ing, -es, -ed, -s), applied to a fixpoint so the
/// result of stemming is itself stable under stemming. A suffix is only
/// removed when at least three characters remain, and a trailing "ss" is
/// never reduced.
std::string stemToken(const std::string& token);

struct NormalizedQuestion {
  std::string original;
  std::vector<std::string> tokens;  // ordered content tokens, stemmed
  std::set<std::string> expanded;   // tokens plus raw synonym-group members
};

/// Lowercases, strips punctuation, removes stopwords, stems, and expands via
/// the lexicon. Throws NoMatchError when no content word remains.
NormalizedQuestion normalizeQuestion(const std::string& text,
                                     const Lexicon& lexicon);

/// Jaccard similarity between the expanded question tokens and the key's
/// label tokens, plus a 0.1 bonus (capped at 1.0) when every label token is
/// covered. Descending score, ties by key text.
std::vector<std::pair<std::string, double>> scoreCandidates(
    const NormalizedQuestion& question, const AlignmentDictionary& dict);

struct MatchResult {
  const DictEntry* entry = nullptr;
  double score = 0.0;
  std::vector<std::pair<std::string, double>> ranked;
  std::vector<std::string> warnings;
};

/// Picks the dictionary key for a question. When externalUrl is non-empty the
/// external matcher protocol is tried first (HTTP POST /match, 2 s timeout)
/// and its verdict is used if its top score clears the threshold; on any
/// failure the lexical scorer takes over with a warning. Throws NoMatchError
/// when the best available score is below the threshold.
MatchResult matchKey(const NormalizedQuestion& question,
                     const AlignmentDictionary& dict, double threshold,
                     const std::string& externalUrl = "");

}  // namespace alignrw

#endif  // ALIGNRW_NL_MATCHER_H
