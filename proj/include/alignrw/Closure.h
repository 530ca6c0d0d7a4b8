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
#ifndef ALIGNRW_CLOSURE_H
#define ALIGNRW_CLOSURE_H

#include <map>
#include <string>
#include <vector>

#include "alignrw/Alignment.h"

namespace alignrw {

/// Undirected weighted graph over the distinct expressions mentioned by a set
/// of equivalence correspondences. Parallel edges collapse to the highest
/// confidence.
struct EquivalenceGraph {
  struct Node {
    ClassExpression expr;
    OntologySide side = OntologySide::Source;
    bool property = false;
    std::string key;  // serialized form, unique together with side/property
  };

  std::vector<Node> nodes;
  std::map<std::string, size_t> index;              // key -> node position
  std::map<std::pair<size_t, size_t>, double> edges;  // (lo, hi) -> confidence

  size_t addNode(const ClassExpression& expr, bool property);
  void addEdge(size_t a, size_t b, double confidence);

  static std::string nodeKey(const ClassExpression& expr, bool property);
};

EquivalenceGraph buildEquivalenceGraph(const std::vector<Correspondence>& cs);

/// New cross-side pairs reachable through equivalence chains. The confidence
/// of a derived pair is the widest-path value: the maximum over connecting
/// paths of the minimum edge confidence along the path. Pairs directly
/// asserted cross-side are not re-emitted; connected same-side pairs are
/// discarded. Output is sorted by (serialized source, serialized target).
std::vector<Correspondence> deriveClosure(
    const EquivalenceGraph& graph, const std::vector<Correspondence>& asserted);

/// Convenience: asserted correspondences followed by everything
/// deriveClosure adds, with derived entries below `minConfidence` removed.
std::vector<Correspondence> closeAlignment(
    const std::vector<Correspondence>& asserted, double minConfidence = 0.0);

}  // namespace alignrw

#endif  // ALIGNRW_CLOSURE_H
