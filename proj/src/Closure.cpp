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
#include "alignrw/Closure.h"

#include <algorithm>
#include <set>

namespace alignrw {

std::string EquivalenceGraph::nodeKey(const ClassExpression& expr,
                                      bool property) {
  std::string key = expr.side() == OntologySide::Source ? "S|" : "T|";
  key += property ? "P|" : "C|";
  key += serializeClassExpression(expr);
  return key;
}

size_t EquivalenceGraph::addNode(const ClassExpression& expr, bool property) {
  std::string key = nodeKey(expr, property);
  auto it = index.find(key);
  if (it != index.end()) return it->second;
  size_t id = nodes.size();
  nodes.push_back(Node{expr, expr.side(), property, key});
  index.emplace(std::move(key), id);
  return id;
}

void EquivalenceGraph::addEdge(size_t a, size_t b, double confidence) {
  if (a == b) return;
  auto key = std::minmax(a, b);
  auto [it, inserted] = edges.emplace(key, confidence);
  if (!inserted) it->second = std::max(it->second, confidence);
}

EquivalenceGraph buildEquivalenceGraph(const std::vector<Correspondence>& cs) {
  EquivalenceGraph g;
  for (auto& c : cs) {
    size_t a = g.addNode(c.source, c.property);
    size_t b = g.addNode(c.target, c.property);
    g.addEdge(a, b, c.confidence);
  }
  return g;
}

std::vector<Correspondence> deriveClosure(
    const EquivalenceGraph& graph,
    const std::vector<Correspondence>& asserted) {
  size_t n = graph.nodes.size();
  // Widest-path (max-min) closure; -1 marks "not connected".
  std::vector<std::vector<double>> w(n, std::vector<double>(n, -1.0));
  for (auto& [pair, conf] : graph.edges) {
    w[pair.first][pair.second] = std::max(w[pair.first][pair.second], conf);
    w[pair.second][pair.first] = w[pair.first][pair.second];
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (w[i][k] < 0.0) continue;
      for (size_t j = 0; j < n; ++j) {
        if (w[k][j] < 0.0) continue;
        w[i][j] = std::max(w[i][j], std::min(w[i][k], w[k][j]));
      }
    }

  std::set<std::pair<std::string, std::string>> assertedCross;
  for (auto& c : asserted)
    if (c.crossSide())
      assertedCross.emplace(EquivalenceGraph::nodeKey(c.source, c.property),
                            EquivalenceGraph::nodeKey(c.target, c.property));

  std::vector<Correspondence> derived;
  for (size_t i = 0; i < n; ++i) {
    if (graph.nodes[i].side != OntologySide::Source) continue;
    for (size_t j = 0; j < n; ++j) {
      if (graph.nodes[j].side != OntologySide::Target) continue;
      if (w[i][j] < 0.0) continue;
      if (assertedCross.count({graph.nodes[i].key, graph.nodes[j].key}))
        continue;
      Correspondence c;
      c.source = graph.nodes[i].expr;
      c.target = graph.nodes[j].expr;
      c.confidence = w[i][j];
      c.origin = Origin::Derived;
      c.property = graph.nodes[i].property && graph.nodes[j].property;
      derived.push_back(std::move(c));
    }
  }
  std::sort(derived.begin(), derived.end(),
            [](const Correspondence& a, const Correspondence& b) {
              std::string as = serializeClassExpression(a.source);
              std::string bs = serializeClassExpression(b.source);
              if (as != bs) return as < bs;
              return serializeClassExpression(a.target) <
                     serializeClassExpression(b.target);
            });
  return derived;
}

std::vector<Correspondence> closeAlignment(
    const std::vector<Correspondence>& asserted, double minConfidence) {
  EquivalenceGraph g = buildEquivalenceGraph(asserted);
  std::vector<Correspondence> all = asserted;
  for (auto& c : deriveClosure(g, asserted))
    if (c.confidence >= minConfidence) all.push_back(std::move(c));
  return all;
}

}  // namespace alignrw
