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
#include "alignrw/SparqlAst.h"

#include <algorithm>
#include <cctype>

#include "alignrw/Errors.h"

namespace alignrw {

std::string Term::text() const {
  switch (kind) {
    case Kind::Variable: return "?" + var;
    case Kind::Iri: return iri.pname();
    case Kind::Literal: return literalText(lit);
    case Kind::RdfType: return "rdf:type";
  }
  throw Error("unreachable term kind");
}

//// Lexer ///////////////////////////////////////////////////////////////////

namespace {

struct QToken {
  enum class Type { Name, Var, IriRef, Int, String, LBrace, RBrace, Dot, End };

  Type type = Type::End;
  std::string prefix;
  bool hasColon = false;
  std::string text;
  int line = 1;
  int column = 1;
};

class QueryLexer {
 public:
  explicit QueryLexer(std::string_view text) : text_(text) { advance(); }

  const QToken& peek() const { return current_; }
  QToken take() {
    QToken t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("query parse error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + msg,
                     line_, col_);
  }

  char cur() const { return text_[pos_]; }
  bool done() const { return pos_ >= text_.size(); }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipSpaceAndComments() {
    while (!done()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        bump();
      } else if (cur() == '#') {
        while (!done() && cur() != '\n') bump();
      } else {
        break;
      }
    }
  }

  std::string readName() {
    std::string out;
    while (!done() && (std::isalnum(static_cast<unsigned char>(cur())) ||
                       cur() == '_')) {
      out += cur();
      bump();
    }
    return out;
  }

  void advance() {
    skipSpaceAndComments();
    current_ = QToken{};
    current_.line = line_;
    current_.column = col_;
    if (done()) {
      current_.type = QToken::Type::End;
      return;
    }
    char c = cur();
    switch (c) {
      case '{': current_.type = QToken::Type::LBrace; bump(); return;
      case '}': current_.type = QToken::Type::RBrace; bump(); return;
      case '.': current_.type = QToken::Type::Dot; bump(); return;
      case '?': {
        bump();
        std::string name = readName();
        if (name.empty()) fail("expected a variable name after '?'");
        current_.type = QToken::Type::Var;
        current_.text = std::move(name);
        return;
      }
      case '<': {
        bump();
        std::string iri;
        while (!done() && cur() != '>') {
          iri += cur();
          bump();
        }
        if (done()) fail("unterminated IRI reference");
        bump();
        current_.type = QToken::Type::IriRef;
        current_.text = std::move(iri);
        return;
      }
      case '"': {
        bump();
        std::string value;
        while (!done() && cur() != '"') {
          if (cur() == '\\') {
            bump();
            if (done()) break;
          }
          value += cur();
          bump();
        }
        if (done()) fail("unterminated string literal");
        bump();
        current_.type = QToken::Type::String;
        current_.text = std::move(value);
        return;
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!done() && std::isdigit(static_cast<unsigned char>(cur()))) {
        digits += cur();
        bump();
      }
      current_.type = QToken::Type::Int;
      current_.text = std::move(digits);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string first = readName();
      current_.type = QToken::Type::Name;
      if (!done() && cur() == ':') {
        bump();
        current_.prefix = std::move(first);
        current_.hasColon = true;
        current_.text = readName();  // may be empty (prefix declaration form)
      } else {
        current_.text = std::move(first);
      }
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  QToken current_;
};

std::string upper(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

//// Parser //////////////////////////////////////////////////////////////////

class QueryParser {
 public:
  QueryParser(std::string_view text, const PrefixEnv& env)
      : lexer_(text), env_(env) {}

  SelectQuery parse() {
    SelectQuery q;
    while (peekKeyword("PREFIX")) {
      lexer_.take();
      QToken label = lexer_.take();
      if (label.type != QToken::Type::Name || !label.hasColon ||
          !label.text.empty())
        fail("expected a prefix label ending in ':'", label);
      QToken iri = lexer_.take();
      if (iri.type != QToken::Type::IriRef)
        fail("expected an <IRI> after the prefix label", iri);
      for (auto& p : q.prefixes)
        if (p.first == label.prefix && p.second != iri.text)
          fail("prefix '" + label.prefix + "' redeclared with a different IRI",
               label);
      q.prefixes.emplace_back(label.prefix, iri.text);
    }
    declared_ = &q.prefixes;

    expectKeyword("SELECT");
    expectKeyword("DISTINCT");
    while (lexer_.peek().type == QToken::Type::Var)
      q.projection.push_back(lexer_.take().text);
    if (q.projection.empty())
      fail("expected at least one projected variable", lexer_.peek());
    expectKeyword("WHERE");
    q.where = parseGroup();
    if (lexer_.peek().type != QToken::Type::End)
      fail("unexpected trailing input", lexer_.peek());

    validate(q);
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const QToken& at) {
    throw ParseError("query parse error at " + std::to_string(at.line) + ":" +
                         std::to_string(at.column) + ": " + msg,
                     at.line, at.column);
  }

  bool peekKeyword(const char* kw) const {
    const QToken& t = lexer_.peek();
    return t.type == QToken::Type::Name && !t.hasColon &&
           upper(t.text) == kw;
  }

  void expectKeyword(const char* kw) {
    if (!peekKeyword(kw))
      fail(std::string("expected ") + kw, lexer_.peek());
    lexer_.take();
  }

  bool startsTerm() const {
    switch (lexer_.peek().type) {
      case QToken::Type::Var:
      case QToken::Type::Name:
      case QToken::Type::Int:
      case QToken::Type::String:
        return true;
      default:
        return false;
    }
  }

  GroupPattern parseGroup() {
    if (lexer_.peek().type != QToken::Type::LBrace)
      fail("expected '{'", lexer_.peek());
    lexer_.take();
    GroupPattern g;
    while (startsTerm() && !peekKeyword("UNION")) {
      g.triples.push_back(parseTriple());
      if (lexer_.peek().type == QToken::Type::Dot) {
        lexer_.take();
      } else if (startsTerm()) {
        fail("expected '.' between triples", lexer_.peek());
      }
    }
    if (lexer_.peek().type == QToken::Type::LBrace) {
      g.unionBranches.push_back(parseGroup());
      while (peekKeyword("UNION")) {
        lexer_.take();
        g.unionBranches.push_back(parseGroup());
      }
      if (g.unionBranches.size() < 2)
        fail("expected UNION after group", lexer_.peek());
    }
    if (lexer_.peek().type != QToken::Type::RBrace)
      fail("expected '}'", lexer_.peek());
    lexer_.take();
    return g;
  }

  TriplePattern parseTriple() {
    TriplePattern t;
    t.subject = parseTerm(Position::Subject);
    t.predicate = parseTerm(Position::Predicate);
    t.object = parseTerm(Position::Object);
    return t;
  }

  enum class Position { Subject, Predicate, Object };

  Term parseTerm(Position pos) {
    QToken t = lexer_.take();
    switch (t.type) {
      case QToken::Type::Var:
        if (pos == Position::Predicate)
          fail("predicate must be an IRI or rdf:type", t);
        return Term::variable(t.text);
      case QToken::Type::Int:
        if (pos != Position::Object)
          fail("literals are only allowed in object position", t);
        return Term::literal(Literal{Literal::Kind::Integer, t.text});
      case QToken::Type::String:
        if (pos != Position::Object)
          fail("literals are only allowed in object position", t);
        return Term::literal(Literal{Literal::Kind::String, t.text});
      case QToken::Type::IriRef:
        fail("full IRIs are not supported in triples; use a prefixed name", t);
      case QToken::Type::Name:
        break;
      default:
        fail("expected a triple term", t);
    }
    // Bare-name forms with reserved meaning.
    if (!t.hasColon) {
      if (t.text == "a") {
        if (pos != Position::Predicate)
          fail("'a' is only valid as a predicate", t);
        return Term::rdfType();
      }
      if (t.text == "true" || t.text == "false") {
        if (pos != Position::Object)
          fail("literals are only allowed in object position", t);
        return Term::literal(Literal{Literal::Kind::Boolean, t.text});
      }
    }
    if (t.hasColon && t.prefix == "rdf" && t.text == "type") {
      if (pos != Position::Predicate)
        fail("rdf:type is only valid as a predicate", t);
      return Term::rdfType();
    }
    if (t.text.empty())
      fail("expected a local name after ':'", t);
    return Term::entity(resolve(t));
  }

  EntityIri resolve(const QToken& name) {
    std::string label = name.hasColon ? name.prefix : "";
    auto side = env_.sideOf(label);
    if (side) return EntityIri{*side, label, name.text};
    // Fall back to the query's own declarations, matched by base IRI.
    for (auto& p : *declared_) {
      if (p.first != label) continue;
      for (auto& e : env_.source.entries())
        if (e.second == p.second)
          return EntityIri{OntologySide::Source, label, name.text};
      for (auto& e : env_.target.entries())
        if (e.second == p.second)
          return EntityIri{OntologySide::Target, label, name.text};
      fail("prefix '" + label + "' does not belong to either ontology", name);
    }
    if (name.hasColon)
      fail("unknown prefix '" + label + "'", name);
    fail("bare name '" + name.text + "' cannot resolve: no default prefix",
         name);
  }

  void validate(const SelectQuery& q) {
    std::set<std::string> seen;
    for (auto& v : q.projection)
      if (!seen.insert(v).second)
        throw ParseError("duplicate projection variable ?" + v, 1, 1);
    std::set<std::string> used = queryVariables(q);
    for (auto& v : q.projection)
      if (!used.count(v))
        throw ParseError("projected variable unused: ?" + v, 1, 1);
  }

  QueryLexer lexer_;
  const PrefixEnv& env_;
  const std::vector<std::pair<std::string, std::string>>* declared_ = nullptr;
};

}  // namespace

SelectQuery parseSelect(std::string_view text, const PrefixEnv& env) {
  return QueryParser(text, env).parse();
}

//// Serialization ///////////////////////////////////////////////////////////

namespace {

void emitGroup(const GroupPattern& g, int level, std::string& out) {
  std::string inner(2 * (level + 1), ' ');
  out += "{\n";
  for (auto& t : g.triples) {
    out += inner;
    out += t.subject.text();
    out += ' ';
    out += t.predicate.text();
    out += ' ';
    out += t.object.text();
    out += " .\n";
  }
  for (size_t i = 0; i < g.unionBranches.size(); ++i) {
    if (i > 0) out += inner + "UNION\n";
    out += inner;
    emitGroup(g.unionBranches[i], level + 1, out);
    out += '\n';
  }
  out += std::string(2 * level, ' ');
  out += '}';
}

}  // namespace

std::string serializeSelect(const SelectQuery& query) {
  std::string out;
  for (auto& p : query.prefixes)
    out += "PREFIX " + p.first + ": <" + p.second + ">\n";
  out += "SELECT DISTINCT";
  for (auto& v : query.projection) out += " ?" + v;
  out += " WHERE ";
  emitGroup(query.where, 0, out);
  out += '\n';
  return out;
}

//// Variable collection /////////////////////////////////////////////////////

namespace {

void collectVars(const GroupPattern& g, std::set<std::string>& out) {
  for (auto& t : g.triples)
    for (const Term* term : {&t.subject, &t.predicate, &t.object})
      if (term->isVariable()) out.insert(term->var);
  for (auto& b : g.unionBranches) collectVars(b, out);
}

}  // namespace

std::set<std::string> groupVariables(const GroupPattern& group) {
  std::set<std::string> out;
  collectVars(group, out);
  return out;
}

std::set<std::string> queryVariables(const SelectQuery& query) {
  return groupVariables(query.where);
}

bool sameQueryShape(const SelectQuery& a, const SelectQuery& b) {
  return a.projection == b.projection && a.where == b.where;
}

}  // namespace alignrw
