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
#include "alignrw/ClassExpression.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include "alignrw/Errors.h"

namespace alignrw {

//// Construction ////////////////////////////////////////////////////////////

void ClassExpression::requireSameSide(OntologySide a, OntologySide b) {
  if (a != b)
    throw SideViolationError(
        "class expression mixes source and target vocabularies");
}

ClassExpression ClassExpression::atom(EntityIri entity) {
  ClassExpression e;
  e.kind_ = ExprKind::Atom;
  e.entity_ = std::move(entity);
  return e;
}

ClassExpression ClassExpression::nary(ExprKind kind,
                                      std::vector<ClassExpression> children) {
  // Flatten nested connectives of the same kind.
  std::vector<ClassExpression> flat;
  for (auto& c : children) {
    if (c.kind() == kind)
      for (auto& g : c.children_) flat.push_back(std::move(g));
    else
      flat.push_back(std::move(c));
  }
  if (flat.empty())
    throw Error("connective requires at least one operand");
  for (size_t i = 1; i < flat.size(); ++i)
    requireSameSide(flat[0].side(), flat[i].side());

  std::sort(flat.begin(), flat.end(),
            [](const ClassExpression& a, const ClassExpression& b) {
              return serializeClassExpression(a) < serializeClassExpression(b);
            });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1) return std::move(flat.front());

  ClassExpression e;
  e.kind_ = kind;
  e.children_ = std::move(flat);
  return e;
}

ClassExpression ClassExpression::conjunction(
    std::vector<ClassExpression> children) {
  return nary(ExprKind::And, std::move(children));
}

ClassExpression ClassExpression::disjunction(
    std::vector<ClassExpression> children) {
  return nary(ExprKind::Or, std::move(children));
}

ClassExpression ClassExpression::some(EntityIri property,
                                      ClassExpression filler) {
  requireSameSide(property.side, filler.side());
  ClassExpression e;
  e.kind_ = ExprKind::Some;
  e.entity_ = std::move(property);
  e.children_.push_back(std::move(filler));
  return e;
}

ClassExpression ClassExpression::only(EntityIri property,
                                      ClassExpression filler) {
  requireSameSide(property.side, filler.side());
  ClassExpression e;
  e.kind_ = ExprKind::Only;
  e.entity_ = std::move(property);
  e.children_.push_back(std::move(filler));
  return e;
}

ClassExpression ClassExpression::cardinality(
    CardKind kind, unsigned bound, EntityIri property,
    std::optional<ClassExpression> filler) {
  if (filler) requireSameSide(property.side, filler->side());
  ClassExpression e;
  e.kind_ = ExprKind::Card;
  e.entity_ = std::move(property);
  e.cardKind_ = kind;
  e.cardBound_ = bound;
  if (filler) e.children_.push_back(std::move(*filler));
  return e;
}

ClassExpression ClassExpression::dataValue(EntityIri property, Literal value) {
  ClassExpression e;
  e.kind_ = ExprKind::Value;
  e.entity_ = std::move(property);
  e.literal_ = std::move(value);
  return e;
}

OntologySide ClassExpression::side() const {
  if (entity_) return entity_->side;
  return children_.front().side();
}

ClassExpression ClassExpression::withFlippedSides() const {
  ClassExpression e = *this;
  if (e.entity_) e.entity_->side = oppositeSide(e.entity_->side);
  for (auto& c : e.children_) c = c.withFlippedSides();
  return e;
}

ClassExpression canonicalize(const ClassExpression& expr) {
  switch (expr.kind()) {
    case ExprKind::Atom:
      return expr;
    case ExprKind::And:
    case ExprKind::Or: {
      std::vector<ClassExpression> kids;
      kids.reserve(expr.children().size());
      for (auto& c : expr.children()) kids.push_back(canonicalize(c));
      return expr.kind() == ExprKind::And
                 ? ClassExpression::conjunction(std::move(kids))
                 : ClassExpression::disjunction(std::move(kids));
    }
    case ExprKind::Some:
      return ClassExpression::some(expr.entity(), canonicalize(expr.filler()));
    case ExprKind::Only:
      return ClassExpression::only(expr.entity(), canonicalize(expr.filler()));
    case ExprKind::Card:
      return ClassExpression::cardinality(
          expr.cardKind(), expr.cardBound(), expr.entity(),
          expr.hasFiller() ? std::optional(canonicalize(expr.filler()))
                           : std::nullopt);
    case ExprKind::Value:
      return ClassExpression::dataValue(expr.entity(), expr.literal());
  }
  throw Error("unreachable expression kind");
}

//// Serialization ///////////////////////////////////////////////////////////

std::string literalText(const Literal& lit) {
  switch (lit.kind) {
    case Literal::Kind::Boolean:
    case Literal::Kind::Integer:
      return lit.lexical;
    case Literal::Kind::String: {
      std::string out = "\"";
      for (char c : lit.lexical) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      return out;
    }
  }
  throw Error("unreachable literal kind");
}

namespace {

void emitExpr(const ClassExpression& e, std::string& out);

// Children of connectives and fillers print bare only when atomic.
void emitWrapped(const ClassExpression& e, std::string& out) {
  if (e.isAtom()) {
    emitExpr(e, out);
  } else {
    out += '(';
    emitExpr(e, out);
    out += ')';
  }
}

void emitExpr(const ClassExpression& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Atom:
      out += e.entity().pname();
      return;
    case ExprKind::And:
    case ExprKind::Or: {
      const char* sep = e.kind() == ExprKind::And ? " and " : " or ";
      bool first = true;
      for (auto& c : e.children()) {
        if (!first) out += sep;
        first = false;
        emitWrapped(c, out);
      }
      return;
    }
    case ExprKind::Some:
    case ExprKind::Only:
      out += e.entity().pname();
      out += e.kind() == ExprKind::Some ? " some " : " only ";
      emitWrapped(e.filler(), out);
      return;
    case ExprKind::Card: {
      out += e.entity().pname();
      switch (e.cardKind()) {
        case CardKind::Min: out += " min "; break;
        case CardKind::Max: out += " max "; break;
        case CardKind::Exactly: out += " exactly "; break;
      }
      out += std::to_string(e.cardBound());
      if (e.hasFiller()) {
        out += ' ';
        emitWrapped(e.filler(), out);
      }
      return;
    }
    case ExprKind::Value:
      out += e.entity().pname();
      out += " value ";
      out += literalText(e.literal());
      return;
  }
}

}  // namespace

std::string serializeClassExpression(const ClassExpression& expr) {
  std::string out;
  emitExpr(expr, out);
  return out;
}

//// Parsing /////////////////////////////////////////////////////////////////

namespace {

struct ExprToken {
  enum class Type { PName, Int, String, LParen, RParen, End };

  Type type = Type::End;
  std::string prefix;   // PName: text before ':'; empty when no colon
  bool hasColon = false;
  std::string text;     // PName local part, Int digits, String content
  int column = 0;       // 1-based position of the first character
};

class ExprLexer {
 public:
  explicit ExprLexer(std::string_view text) : text_(text) { advance(); }

  const ExprToken& peek() const { return current_; }
  ExprToken take() {
    ExprToken t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, size_t at) {
    throw ParseError("expression parse error at column " +
                         std::to_string(at + 1) + ": " + msg,
                     1, static_cast<int>(at + 1));
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    current_ = ExprToken{};
    current_.column = static_cast<int>(pos_ + 1);
    if (pos_ >= text_.size()) {
      current_.type = ExprToken::Type::End;
      return;
    }
    char c = text_[pos_];
    if (c == '(') {
      current_.type = ExprToken::Type::LParen;
      ++pos_;
      return;
    }
    if (c == ')') {
      current_.type = ExprToken::Type::RParen;
      ++pos_;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      current_.type = ExprToken::Type::Int;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '"') {
      size_t start = pos_++;
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        value += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string literal", start);
      ++pos_;
      current_.type = ExprToken::Type::String;
      current_.text = std::move(value);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      auto readName = [&]() {
        size_t s = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          ++pos_;
        return std::string(text_.substr(s, pos_ - s));
      };
      std::string first = readName();
      current_.type = ExprToken::Type::PName;
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        std::string second = readName();
        if (second.empty()) fail("expected local name after ':'", pos_);
        current_.prefix = std::move(first);
        current_.hasColon = true;
        current_.text = std::move(second);
      } else {
        current_.text = std::move(first);
      }
      (void)start;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  size_t pos_ = 0;
  ExprToken current_;
};

std::string lowered(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, OntologySide defaultSide,
             const PrefixEnv& env)
      : lexer_(text), defaultSide_(defaultSide), env_(env) {}

  ClassExpression parse() {
    ClassExpression e = parseExpr();
    if (lexer_.peek().type != ExprToken::Type::End)
      fail("unexpected trailing input", lexer_.peek());
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const ExprToken& at) {
    throw ParseError("expression parse error at column " +
                         std::to_string(at.column) + ": " + msg,
                     1, at.column);
  }

  bool peekKeyword(const char* kw) const {
    const ExprToken& t = lexer_.peek();
    return t.type == ExprToken::Type::PName && !t.hasColon &&
           lowered(t.text) == kw;
  }

  ClassExpression parseExpr() {
    std::vector<ClassExpression> children;
    children.push_back(parseTerm());
    if (peekKeyword("and")) {
      while (peekKeyword("and")) {
        lexer_.take();
        children.push_back(parseTerm());
      }
      if (peekKeyword("or"))
        fail("mixed 'and'/'or' at one level requires parentheses",
             lexer_.peek());
      return ClassExpression::conjunction(std::move(children));
    }
    if (peekKeyword("or")) {
      while (peekKeyword("or")) {
        lexer_.take();
        children.push_back(parseTerm());
      }
      if (peekKeyword("and"))
        fail("mixed 'and'/'or' at one level requires parentheses",
             lexer_.peek());
      return ClassExpression::disjunction(std::move(children));
    }
    return std::move(children.front());
  }

  ClassExpression parseTerm() {
    const ExprToken& t = lexer_.peek();
    if (t.type == ExprToken::Type::LParen) {
      lexer_.take();
      ClassExpression inner = parseExpr();
      if (lexer_.peek().type != ExprToken::Type::RParen)
        fail("expected ')'", lexer_.peek());
      lexer_.take();
      return inner;
    }
    if (t.type != ExprToken::Type::PName)
      fail("expected a name or '('", t);
    ExprToken name = lexer_.take();

    if (peekKeyword("some") || peekKeyword("only")) {
      bool isSome = peekKeyword("some");
      lexer_.take();
      ClassExpression filler = parseTerm();
      EntityIri prop = resolve(name);
      return isSome ? ClassExpression::some(std::move(prop), std::move(filler))
                    : ClassExpression::only(std::move(prop), std::move(filler));
    }
    if (peekKeyword("min") || peekKeyword("max") || peekKeyword("exactly")) {
      std::string kw = lowered(lexer_.take().text);
      CardKind kind = kw == "min"   ? CardKind::Min
                      : kw == "max" ? CardKind::Max
                                    : CardKind::Exactly;
      if (lexer_.peek().type != ExprToken::Type::Int)
        fail("expected a cardinality bound", lexer_.peek());
      unsigned bound = static_cast<unsigned>(std::stoul(lexer_.take().text));
      std::optional<ClassExpression> filler;
      if (startsTerm()) filler = parseTerm();
      return ClassExpression::cardinality(kind, bound, resolve(name),
                                          std::move(filler));
    }
    if (peekKeyword("value")) {
      lexer_.take();
      return ClassExpression::dataValue(resolve(name), parseLiteral());
    }
    return ClassExpression::atom(resolve(name));
  }

  bool startsTerm() const {
    const ExprToken& t = lexer_.peek();
    if (t.type == ExprToken::Type::LParen) return true;
    if (t.type != ExprToken::Type::PName) return false;
    // A connective keyword ends the optional filler slot.
    std::string low = lowered(t.text);
    return t.hasColon || (low != "and" && low != "or");
  }

  Literal parseLiteral() {
    const ExprToken& t = lexer_.peek();
    if (t.type == ExprToken::Type::Int) {
      return Literal{Literal::Kind::Integer, lexer_.take().text};
    }
    if (t.type == ExprToken::Type::String) {
      return Literal{Literal::Kind::String, lexer_.take().text};
    }
    if (t.type == ExprToken::Type::PName && !t.hasColon &&
        (t.text == "true" || t.text == "false")) {
      return Literal{Literal::Kind::Boolean, lexer_.take().text};
    }
    fail("expected a literal (true, false, integer, or quoted string)", t);
  }

  EntityIri resolve(const ExprToken& name) {
    if (name.hasColon) {
      auto side = env_.sideOf(name.prefix);
      if (!side)
        fail("unknown prefix '" + name.prefix + "'", name);
      return EntityIri{*side, name.prefix, name.text};
    }
    const PrefixTable& table = env_.table(defaultSide_);
    if (table.empty())
      fail("bare name '" + name.text + "' cannot resolve: the " +
               std::string(sideName(defaultSide_)) +
               " ontology declares no prefixes",
           name);
    return EntityIri{defaultSide_, table.defaultLabel(), name.text};
  }

  ExprLexer lexer_;
  OntologySide defaultSide_;
  const PrefixEnv& env_;
};

}  // namespace

ClassExpression parseClassExpression(std::string_view text,
                                     OntologySide defaultSide,
                                     const PrefixEnv& env) {
  return ExprParser(text, defaultSide, env).parse();
}

//// Label tokens ////////////////////////////////////////////////////////////

namespace {

void splitLocalName(const std::string& local, std::set<std::string>& out) {
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) {
      out.insert(current);
      current.clear();
    }
  };
  for (size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && i > 0 &&
        (std::islower(static_cast<unsigned char>(local[i - 1])) ||
         std::isdigit(static_cast<unsigned char>(local[i - 1]))))
      flush();
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  flush();
}

void collectTokens(const ClassExpression& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case ExprKind::Atom:
      splitLocalName(e.entity().local, out);
      return;
    case ExprKind::And:
    case ExprKind::Or:
      for (auto& c : e.children()) collectTokens(c, out);
      return;
    case ExprKind::Some:
    case ExprKind::Only:
      splitLocalName(e.entity().local, out);
      collectTokens(e.filler(), out);
      return;
    case ExprKind::Card:
      splitLocalName(e.entity().local, out);
      if (e.hasFiller()) collectTokens(e.filler(), out);
      return;
    case ExprKind::Value:
      splitLocalName(e.entity().local, out);
      if (e.literal().kind == Literal::Kind::Boolean)
        out.insert(e.literal().lexical);
      return;
  }
}

}  // namespace

std::set<std::string> labelTokens(const ClassExpression& expr) {
  std::set<std::string> out;
  collectTokens(expr, out);
  return out;
}

}  // namespace alignrw
