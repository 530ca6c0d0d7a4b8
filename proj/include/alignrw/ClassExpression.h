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
#ifndef ALIGNRW_CLASS_EXPRESSION_H
#define ALIGNRW_CLASS_EXPRESSION_H

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alignrw/Prefixes.h"

namespace alignrw {

/// Typed literal as it appears in data-value restrictions and query objects.
struct Literal {
  enum class Kind { Boolean, Integer, String };

  Kind kind = Kind::Boolean;
  std::string lexical;

  static Literal boolean(bool v) { return {Kind::Boolean, v ? "true" : "false"}; }
  static Literal integer(long v) { return {Kind::Integer, std::to_string(v)}; }
  static Literal string(std::string v) { return {Kind::String, std::move(v)}; }

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

enum class ExprKind { Atom, And, Or, Some, Only, Card, Value };
enum class CardKind { Min, Max, Exactly };

/// Immutable class expression over one ontology's vocabulary:
///
///   Atom(C) | And(e...) | Or(e...) | Some(p, e) | Only(p, e)
///   | Card(min|max|exactly, n, p [, e]) | Value(p, literal)
///
/// Instances are always in canonical form: nested And/And and Or/Or are
/// flattened, duplicate children removed, children sorted by their serialized
/// text, and single-child And/Or collapsed. Structural equality on two
/// canonical expressions is therefore invariant under the order the children
/// were supplied in.
class ClassExpression {
 public:
  static ClassExpression atom(EntityIri entity);
  static ClassExpression conjunction(std::vector<ClassExpression> children);
  static ClassExpression disjunction(std::vector<ClassExpression> children);
  static ClassExpression some(EntityIri property, ClassExpression filler);
  static ClassExpression only(EntityIri property, ClassExpression filler);
  static ClassExpression cardinality(CardKind kind, unsigned bound,
                                     EntityIri property,
                                     std::optional<ClassExpression> filler);
  static ClassExpression dataValue(EntityIri property, Literal value);

  /// Placeholder value (an atom with no entity); assign before use.
  ClassExpression() = default;

  ExprKind kind() const { return kind_; }
  bool isAtom() const { return kind_ == ExprKind::Atom; }

  /// Atom: the class. Some/Only/Card/Value: the property.
  const EntityIri& entity() const { return *entity_; }
  const std::vector<ClassExpression>& children() const { return children_; }
  /// Filler of a Some/Only, or of a Card that has one.
  const ClassExpression& filler() const { return children_.front(); }
  bool hasFiller() const { return !children_.empty(); }
  CardKind cardKind() const { return cardKind_; }
  unsigned cardBound() const { return cardBound_; }
  const Literal& literal() const { return *literal_; }

  /// Side shared by every IRI in the expression.
  OntologySide side() const;

  /// Same expression with every IRI re-tagged to the opposite side.
  ClassExpression withFlippedSides() const;

  bool operator==(const ClassExpression&) const = default;

 private:
  static ClassExpression nary(ExprKind kind,
                              std::vector<ClassExpression> children);
  static void requireSameSide(OntologySide a, OntologySide b);

  ExprKind kind_ = ExprKind::Atom;
  std::optional<EntityIri> entity_;
  std::vector<ClassExpression> children_;
  CardKind cardKind_ = CardKind::Min;
  unsigned cardBound_ = 0;
  std::optional<Literal> literal_;
};

/// Re-applies the canonical ordering bottom-up. Idempotent; on expressions
/// built through the factories it is the identity.
ClassExpression canonicalize(const ClassExpression& expr);

/// Canonical text form. Atoms print bare, every other child of a connective
/// or filler position prints parenthesized, e.g.
/// "ConferencePaper and (hasDecision some Acceptance)".
std::string serializeClassExpression(const ClassExpression& expr);

/// Parses the expression grammar
///
///   expr  = term { "and" term } | term { "or" term }
///   term  = pname | "(" expr ")" | restriction
///   restr = pname ("some"|"only") term
///         | pname ("min"|"max"|"exactly") INT [ term ]
///         | pname "value" literal
///
/// Prefixed names resolve through whichever table of `env` declares the
/// prefix; bare names take the default prefix of `defaultSide`. Connective
/// and restriction keywords are case-insensitive; mixing "and" and "or" at
/// one level without parentheses is an error.
ClassExpression parseClassExpression(std::string_view text,
                                     OntologySide defaultSide,
                                     const PrefixEnv& env);

/// Lowercased CamelCase/underscore fragments of every local name in the
/// expression, plus the lexical form of boolean literals. Connectives and
/// non-boolean literals contribute nothing.
std::set<std::string> labelTokens(const ClassExpression& expr);

/// Serialized literal as it appears in expressions and queries.
std::string literalText(const Literal& lit);

}  // namespace alignrw

#endif  // ALIGNRW_CLASS_EXPRESSION_H
