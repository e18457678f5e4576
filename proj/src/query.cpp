#include "dlrdb/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "dlrdb/error.hpp"

namespace dlrdb {

namespace {

struct Token {
  enum class Kind { kIdent, kInteger, kString, kDot, kComma, kEquals, kSemicolon, kEnd };
  Kind kind;
  std::string text;
  SourceLocation location;
};

const std::set<std::string> kKeywords = {"SELECT", "FROM", "WHERE", "JOIN", "AS", "ON", "AND"};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto here = [&](std::size_t pos) { return SourceLocation{line, pos - line_start + 1}; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      continue;
    }
    SourceLocation loc = here(i);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      tokens.push_back({Token::Kind::kIdent, std::string(text.substr(start, i - start)), loc});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t start = i++;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      tokens.push_back({Token::Kind::kInteger, std::string(text.substr(start, i - start)), loc});
    } else if (c == '"') {
      std::string value;
      ++i;
      while (true) {
        if (i >= text.size() || text[i] == '\n') {
          throw ParseError("unterminated string literal", loc.line, loc.column);
        }
        char ch = text[i++];
        if (ch == '"') {
          break;
        }
        if (ch == '\\' && i < text.size() && (text[i] == '"' || text[i] == '\\')) {
          ch = text[i++];
        }
        value += ch;
      }
      tokens.push_back({Token::Kind::kString, std::move(value), loc});
    } else {
      Token::Kind kind;
      switch (c) {
        case '.': kind = Token::Kind::kDot; break;
        case ',': kind = Token::Kind::kComma; break;
        case '=': kind = Token::Kind::kEquals; break;
        case ';': kind = Token::Kind::kSemicolon; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", loc.line, loc.column);
      }
      tokens.push_back({kind, std::string(1, c), loc});
      ++i;
    }
  }
  tokens.push_back({Token::Kind::kEnd, "", here(i)});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  ConceptualQuery parse() {
    ConceptualQuery q;
    expect_keyword("SELECT");
    do {
      q.select.push_back(attribute_ref());
    } while (accept(Token::Kind::kComma));
    expect_keyword("FROM");
    do {
      q.from.push_back(join_block());
    } while (accept(Token::Kind::kComma));
    if (accept_keyword("WHERE")) {
      do {
        q.where.push_back(where_condition());
      } while (accept_keyword("AND"));
    }
    accept(Token::Kind::kSemicolon);
    if (peek().kind != Token::Kind::kEnd) {
      fail("unexpected '" + peek().text + "'");
    }
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().location.line, peek().location.column);
  }

  bool is_keyword(const Token& t, std::string_view keyword) const {
    return t.kind == Token::Kind::kIdent && upper(t.text) == keyword;
  }

  bool accept_keyword(std::string_view keyword) {
    if (is_keyword(peek(), keyword)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_keyword(std::string_view keyword) {
    if (!accept_keyword(keyword)) {
      fail("expected " + std::string(keyword) + ", found '" + describe(peek()) + "'");
    }
  }

  bool accept(Token::Kind kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(Token::Kind kind, const char* what) {
    if (!accept(kind)) {
      fail(std::string("expected ") + what + ", found '" + describe(peek()) + "'");
    }
  }

  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::kEnd ? "end of query" : t.text;
  }

  const Token& identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kIdent || kKeywords.count(upper(t.text))) {
      fail(std::string("expected ") + what + ", found '" + describe(t) + "'");
    }
    return advance();
  }

  AttributeRef attribute_ref() {
    const Token& v = identifier("a variable");
    expect(Token::Kind::kDot, "'.'");
    const Token& a = identifier("an attribute name");
    return {v.text, a.text, v.location};
  }

  ComponentRef component_ref() {
    const Token& v = identifier("a variable");
    ComponentRef ref{v.text, std::nullopt, v.location};
    if (accept(Token::Kind::kDot)) {
      const Token& n = peek();
      std::size_t position = 0;
      auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), position);
      if (n.kind != Token::Kind::kInteger || ec != std::errc() ||
          ptr != n.text.data() + n.text.size() || position == 0) {
        fail("expected a component index >= 1 after '.'");
      }
      advance();
      ref.position = position;
    }
    return ref;
  }

  JoinMember member() {
    const Token& name = identifier("a concept or relationship name");
    expect_keyword("AS");
    const Token& v = identifier("a variable");
    return {name.text, v.text, name.location};
  }

  JoinBlock join_block() {
    JoinBlock block;
    SourceLocation start = peek().location;
    block.members.push_back(member());
    while (accept_keyword("JOIN")) {
      block.members.push_back(member());
    }
    if (is_keyword(peek(), "ON")) {
      if (block.members.size() == 1) {
        fail("ON requires at least two joined members");
      }
      advance();
      do {
        ComponentRef left = component_ref();
        expect(Token::Kind::kEquals, "'='");
        ComponentRef right = component_ref();
        block.on.push_back({std::move(left), std::move(right)});
      } while (accept_keyword("AND"));
    } else if (block.members.size() > 1) {
      throw ParseError("a JOIN needs an ON condition", start.line, start.column);
    }
    return block;
  }

  WhereCondition where_condition() {
    WhereCondition c{attribute_ref(), Value{}};
    expect(Token::Kind::kEquals, "'='");
    const Token& t = peek();
    if (t.kind == Token::Kind::kString) {
      c.right = Value{t.text};
      advance();
    } else if (t.kind == Token::Kind::kInteger) {
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
      if (ec != std::errc()) {
        fail("integer literal out of range");
      }
      c.right = Value{value};
      advance();
    } else {
      c.right = attribute_ref();
    }
    return c;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void check_references(const ConceptualQuery& q) {
  std::set<std::string> declared;
  for (const auto& block : q.from) {
    for (const auto& m : block.members) {
      if (!declared.insert(m.variable).second) {
        throw ParseError("duplicate variable '" + m.variable + "'", m.location.line,
                         m.location.column);
      }
    }
  }
  auto require = [&](const std::string& variable, const SourceLocation& loc) {
    if (!declared.count(variable)) {
      throw ParseError("unknown variable '" + variable + "'", loc.line, loc.column);
    }
  };
  for (const auto& s : q.select) {
    require(s.variable, s.location);
  }
  for (const auto& block : q.from) {
    std::set<std::string> local;
    for (const auto& m : block.members) {
      local.insert(m.variable);
    }
    for (const auto& e : block.on) {
      for (const auto* side : {&e.left, &e.right}) {
        require(side->variable, side->location);
        if (!local.count(side->variable)) {
          throw ParseError("'" + side->variable + "' is not joined in this block",
                           side->location.line, side->location.column);
        }
      }
    }
  }
  for (const auto& w : q.where) {
    require(w.left.variable, w.left.location);
    if (const auto* r = std::get_if<AttributeRef>(&w.right)) {
      require(r->variable, r->location);
    }
  }
}

std::string print(const ComponentRef& c) {
  return c.position ? c.variable + "." + std::to_string(*c.position) : c.variable;
}

std::string print(const AttributeRef& a) { return a.variable + "." + a.attribute; }

}  // namespace

const JoinMember* ConceptualQuery::member(std::string_view variable) const {
  for (const auto& block : from) {
    for (const auto& m : block.members) {
      if (m.variable == variable) {
        return &m;
      }
    }
  }
  return nullptr;
}

ConceptualQuery parse_query(std::string_view text) {
  ConceptualQuery q = Parser(text).parse();
  check_references(q);
  return q;
}

std::string print_query(const ConceptualQuery& q) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < q.select.size(); ++i) {
    out += (i ? ", " : "") + print(q.select[i]);
  }
  out += " FROM ";
  for (std::size_t b = 0; b < q.from.size(); ++b) {
    const auto& block = q.from[b];
    out += b ? ", " : "";
    for (std::size_t i = 0; i < block.members.size(); ++i) {
      out += (i ? " JOIN " : "") + block.members[i].name + " AS " + block.members[i].variable;
    }
    for (std::size_t i = 0; i < block.on.size(); ++i) {
      out += (i ? " AND " : " ON ") + print(block.on[i].left) + " = " + print(block.on[i].right);
    }
  }
  for (std::size_t i = 0; i < q.where.size(); ++i) {
    const auto& w = q.where[i];
    out += (i ? " AND " : " WHERE ") + print(w.left) + " = ";
    if (const auto* r = std::get_if<AttributeRef>(&w.right)) {
      out += print(*r);
    } else {
      out += to_literal(std::get<Value>(w.right));
    }
  }
  return out;
}

std::string_view to_string(QueryViolation::Kind kind) {
  switch (kind) {
    case QueryViolation::Kind::kUnknownName: return "unknown-name";
    case QueryViolation::Kind::kBadComponentRef: return "bad-component-reference";
    case QueryViolation::Kind::kSignatureMismatch: return "signature-mismatch";
    case QueryViolation::Kind::kUnknownAttribute: return "unknown-attribute";
    case QueryViolation::Kind::kTypeMismatch: return "type-mismatch";
  }
  return "unknown";
}

std::vector<QueryViolation> validate_query(const ConceptualQuery& q, const System& system) {
  using Kind = QueryViolation::Kind;
  std::vector<QueryViolation> out;
  std::set<std::string> unresolved;

  for (const auto& block : q.from) {
    for (const auto& m : block.members) {
      if (!system.kb.has_concept(m.name) && !system.kb.arity(m.name)) {
        out.push_back({Kind::kUnknownName,
                       "'" + m.name + "' is not a declared concept or relationship", m.location});
        unresolved.insert(m.variable);
      }
    }
  }

  // The basic concept an ON side denotes, or nullopt after reporting why not.
  auto concept_of = [&](const ComponentRef& ref) -> std::optional<BasicConcept> {
    if (unresolved.count(ref.variable)) {
      return std::nullopt;
    }
    const JoinMember* m = q.member(ref.variable);
    if (system.kb.has_concept(m->name)) {
      if (ref.position) {
        out.push_back({Kind::kBadComponentRef,
                       "'" + print(ref) + "': " + m->name + " is a concept, write '" +
                           ref.variable + "' without a component index",
                       ref.location});
        return std::nullopt;
      }
      return BasicConcept::atomic(m->name);
    }
    std::size_t arity = *system.kb.arity(m->name);
    if (!ref.position) {
      out.push_back({Kind::kBadComponentRef,
                     "'" + ref.variable + "': " + m->name + " is a relationship, write '" +
                         ref.variable + ".<i>'",
                     ref.location});
      return std::nullopt;
    }
    if (*ref.position > arity) {
      out.push_back({Kind::kBadComponentRef,
                     "'" + print(ref) + "': " + m->name + " has arity " + std::to_string(arity),
                     ref.location});
      return std::nullopt;
    }
    return BasicConcept::projection(m->name, *ref.position);
  };

  for (const auto& block : q.from) {
    for (const auto& e : block.on) {
      auto left = concept_of(e.left);
      auto right = concept_of(e.right);
      if (!left || !right) {
        continue;
      }
      Signature ls = system.signature(*left);
      Signature rs = system.signature(*right);
      if (ls != rs) {
        out.push_back({Kind::kSignatureMismatch,
                       "'" + print(e.left) + " = " + print(e.right) + "' compares signature " +
                           to_string(ls) + " with " + to_string(rs),
                       e.left.location});
      }
    }
  }

  auto attribute_type = [&](const AttributeRef& a) -> std::optional<AttributeType> {
    if (unresolved.count(a.variable)) {
      return std::nullopt;
    }
    const RelationSchema& rel = system.relation_of(q.member(a.variable)->name);
    auto index = rel.attribute_index(a.attribute);
    if (!index) {
      out.push_back({Kind::kUnknownAttribute,
                     "'" + print(a) + "': relation " + rel.name + " has no attribute '" +
                         a.attribute + "'",
                     a.location});
      return std::nullopt;
    }
    return rel.attributes[*index].type;
  };

  for (const auto& s : q.select) {
    attribute_type(s);
  }
  for (const auto& w : q.where) {
    auto left = attribute_type(w.left);
    if (const auto* r = std::get_if<AttributeRef>(&w.right)) {
      auto right = attribute_type(*r);
      if (left && right && *left != *right) {
        out.push_back({Kind::kTypeMismatch,
                       "'" + print(w.left) + " = " + print(*r) + "' compares " +
                           std::string(to_string(*left)) + " with " +
                           std::string(to_string(*right)),
                       w.left.location});
      }
    } else if (left && !fits(std::get<Value>(w.right), *left)) {
      out.push_back({Kind::kTypeMismatch,
                     "'" + print(w.left) + "' has type " + std::string(to_string(*left)) +
                         ", compared with " + to_literal(std::get<Value>(w.right)),
                     w.left.location});
    }
  }
  return out;
}

}  // namespace dlrdb
