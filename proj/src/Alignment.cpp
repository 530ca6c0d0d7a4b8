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
#include "alignrw/Alignment.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "alignrw/Errors.h"

namespace alignrw {

const char* patternKindName(PatternKind kind) {
  switch (kind) {
    case PatternKind::ClassSs: return "CLASS_SS";
    case PatternKind::Cat: return "CAT";
    case PatternKind::Cav: return "CAV";
    case PatternKind::Cu: return "CU";
    case PatternKind::Ci: return "CI";
    case PatternKind::Cc: return "CC";
    case PatternKind::PropSs: return "PROP_SS";
  }
  return "?";
}

namespace {

bool containsDataValue(const ClassExpression& e) {
  if (e.kind() == ExprKind::Value) return true;
  for (auto& c : e.children())
    if (containsDataValue(c)) return true;
  return false;
}

bool allAtoms(const ClassExpression& e) {
  for (auto& c : e.children())
    if (!c.isAtom()) return false;
  return true;
}

// Shape of the non-atomic member when exactly one member is an atom.
PatternKind compositeKind(const ClassExpression& composite) {
  switch (composite.kind()) {
    case ExprKind::Or:
      return PatternKind::Cu;
    case ExprKind::And:
      if (allAtoms(composite)) return PatternKind::Ci;
      return containsDataValue(composite) ? PatternKind::Cav : PatternKind::Cat;
    case ExprKind::Value:
      return PatternKind::Cav;
    default:  // bare Some/Only/Card restriction
      return PatternKind::Cat;
  }
}

}  // namespace

PatternKind classifyPattern(const Correspondence& c) {
  bool sourceAtom = c.source.isAtom();
  bool targetAtom = c.target.isAtom();
  if (sourceAtom && targetAtom)
    return c.property ? PatternKind::PropSs : PatternKind::ClassSs;
  if (!sourceAtom && !targetAtom) return PatternKind::Cc;
  return compositeKind(sourceAtom ? c.target : c.source);
}

Alignment Alignment::inverted() const {
  Alignment out;
  out.prefixes = prefixes.swapped();
  out.correspondences.reserve(correspondences.size());
  for (auto& c : correspondences) {
    Correspondence ic;
    ic.source = c.target.withFlippedSides();
    ic.target = c.source.withFlippedSides();
    ic.confidence = c.confidence;
    ic.origin = c.origin;
    ic.property = c.property;
    out.correspondences.push_back(std::move(ic));
  }
  return out;
}

//// Loading /////////////////////////////////////////////////////////////////

namespace {

using nlohmann::json;

PrefixTable readPrefixes(const json& doc, const char* field) {
  PrefixTable table;
  if (!doc.contains(field)) return table;
  const json& obj = doc.at(field);
  if (!obj.is_object())
    throw AlignmentError(std::string(field) + " must be an object");
  // nlohmann::json objects iterate key-sorted, which keeps the default
  // (first) prefix stable across loads.
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.value().is_string())
      throw AlignmentError(std::string(field) + "." + it.key() +
                           " must be a string IRI");
    table.add(it.key(), it.value().get<std::string>());
  }
  return table;
}

}  // namespace

Alignment parseAlignment(const std::string& jsonText) {
  json doc;
  try {
    doc = json::parse(jsonText);
  } catch (const json::parse_error& e) {
    throw AlignmentError(std::string("alignment is not valid JSON: ") +
                         e.what());
  }
  if (!doc.is_object()) throw AlignmentError("alignment must be a JSON object");

  Alignment out;
  out.prefixes.source = readPrefixes(doc, "source_prefixes");
  out.prefixes.target = readPrefixes(doc, "target_prefixes");
  for (auto& e : out.prefixes.source.entries())
    if (out.prefixes.target.has(e.first))
      throw SideViolationError("prefix '" + e.first +
                               "' is declared by both ontologies");

  if (!doc.contains("correspondences")) return out;
  const json& list = doc.at("correspondences");
  if (!list.is_array())
    throw AlignmentError("correspondences must be an array");

  int index = 0;
  for (const json& item : list) {
    std::string where = "correspondence #" + std::to_string(index++);
    if (!item.is_object())
      throw AlignmentError(where + " must be an object");
    if (!item.contains("source") || !item.contains("target"))
      throw AlignmentError(where + " needs 'source' and 'target' members");

    Correspondence c;
    try {
      c.source = parseClassExpression(item.at("source").get<std::string>(),
                                      OntologySide::Source, out.prefixes);
      c.target = parseClassExpression(item.at("target").get<std::string>(),
                                      OntologySide::Target, out.prefixes);
    } catch (const ParseError& e) {
      throw AlignmentError(where + ": " + e.what());
    }

    if (item.contains("relation")) {
      std::string rel = item.at("relation").get<std::string>();
      if (rel != "equivalence")
        throw AlignmentError(where + ": unsupported relation '" + rel + "'");
    }
    if (item.contains("confidence")) {
      if (!item.at("confidence").is_number())
        throw AlignmentError(where + ": confidence must be a number");
      c.confidence = item.at("confidence").get<double>();
      if (c.confidence < 0.0 || c.confidence > 1.0)
        throw AlignmentError(where + ": confidence " +
                             std::to_string(c.confidence) +
                             " is outside [0,1]");
    }
    if (item.contains("type")) {
      std::string type = item.at("type").get<std::string>();
      if (type == "property") {
        c.property = true;
      } else if (type != "class") {
        throw AlignmentError(where + ": unsupported type '" + type + "'");
      }
    }
    if (item.contains("origin")) {
      std::string origin = item.at("origin").get<std::string>();
      if (origin == "derived")
        c.origin = Origin::Derived;
      else if (origin != "asserted")
        throw AlignmentError(where + ": unsupported origin '" + origin + "'");
    }

    if (c.property && (!c.source.isAtom() || !c.target.isAtom()))
      throw AlignmentError(where +
                           ": property correspondences need atomic members");
    // Orientation check: a pair that crosses the alignment must keep the
    // source-ontology member in the source field.
    if (c.source.side() == OntologySide::Target &&
        c.target.side() == OntologySide::Source)
      throw SideViolationError(
          where + ": members are swapped against the declared orientation");

    out.correspondences.push_back(std::move(c));
  }
  return out;
}

Alignment loadAlignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw AlignmentError("cannot open alignment file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseAlignment(buf.str());
}

std::string serializeAlignment(const PrefixEnv& env,
                               const std::vector<Correspondence>& cs) {
  nlohmann::ordered_json doc;
  auto& src = doc["source_prefixes"] = nlohmann::ordered_json::object();
  for (auto& e : env.source.entries()) src[e.first] = e.second;
  auto& tgt = doc["target_prefixes"] = nlohmann::ordered_json::object();
  for (auto& e : env.target.entries()) tgt[e.first] = e.second;
  auto& list = doc["correspondences"] = nlohmann::ordered_json::array();
  for (auto& c : cs) {
    nlohmann::ordered_json item;
    item["source"] = serializeClassExpression(c.source);
    item["target"] = serializeClassExpression(c.target);
    item["relation"] = "equivalence";
    item["confidence"] = c.confidence;
    if (c.property) item["type"] = "property";
    item["origin"] = c.origin == Origin::Asserted ? "asserted" : "derived";
    list.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

//// Dictionary //////////////////////////////////////////////////////////////

namespace {

void sortValues(DictEntry& entry) {
  std::stable_sort(entry.values.begin(), entry.values.end(),
                   [](const DictValue& a, const DictValue& b) {
                     if (a.confidence != b.confidence)
                       return a.confidence > b.confidence;
                     return serializeClassExpression(a.target) <
                            serializeClassExpression(b.target);
                   });
}

}  // namespace

void AlignmentDictionary::insert(const Correspondence& c) {
  if (!c.crossSide()) return;
  std::string key = serializeClassExpression(c.source);
  DictEntry& entry = entries_[key];
  if (entry.values.empty()) {
    entry.key = c.source;
    entry.property = c.property;
  } else if (entry.property != c.property) {
    throw AlignmentError("'" + key + "' is used as both a class and a property");
  }
  std::string targetText = serializeClassExpression(c.target);
  for (auto& v : entry.values) {
    if (serializeClassExpression(v.target) == targetText) {
      // Duplicate pair: keep the best confidence, preferring asserted on ties.
      if (c.confidence > v.confidence ||
          (c.confidence == v.confidence && c.origin == Origin::Asserted))
        v = DictValue{c.target, c.confidence, c.origin};
      sortValues(entry);
      return;
    }
  }
  entry.values.push_back(DictValue{c.target, c.confidence, c.origin});
  sortValues(entry);
}

const DictEntry* AlignmentDictionary::lookup(const ClassExpression& key) const {
  return lookupSerialized(serializeClassExpression(key));
}

const DictEntry* AlignmentDictionary::lookupSerialized(
    const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

AlignmentDictionary buildDictionary(const std::vector<Correspondence>& cs) {
  AlignmentDictionary dict;
  for (auto& c : cs) dict.insert(c);
  return dict;
}

}  // namespace alignrw
