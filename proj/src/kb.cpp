#include "dlrdb/kb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <queue>
#include <sstream>

#include "dlrdb/error.hpp"
#include "overloaded.hpp"

namespace dlrdb {

namespace {

using detail::Overloaded;

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') {
      break;
    }
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<std::size_t> parse_positive(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    return std::nullopt;
  }
  return value;
}

// Parses "[<i>]" or "exists[<i>]" prefix tokens; returns the index.
std::optional<std::size_t> bracketed_index(std::string_view token, std::string_view prefix) {
  if (token.size() < prefix.size() + 3 || token.substr(0, prefix.size()) != prefix ||
      token[prefix.size()] != '[' || token.back() != ']') {
    return std::nullopt;
  }
  return parse_positive(token.substr(prefix.size() + 1, token.size() - prefix.size() - 2));
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line) : tokens_(std::move(tokens)), line_(line) {}

  bool done() const { return pos_ == tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t column = pos_ < tokens_.size() ? tokens_[pos_].column : 0;
    if (column == 0 && !tokens_.empty()) {
      column = tokens_.back().column + tokens_.back().text.size();
    }
    throw ParseError(message, line_, column);
  }

  const Token& next(const char* what) {
    if (done()) {
      fail(std::string("expected ") + what + " at end of line");
    }
    return tokens_[pos_++];
  }

  std::string identifier(const char* what) {
    const Token& t = next(what);
    if (!is_identifier(t.text)) {
      --pos_;
      fail(std::string("expected ") + what + ", found '" + t.text + "'");
    }
    return t.text;
  }

  BasicConcept basic_concept() {
    const Token& t = next("a basic concept");
    if (t.text.rfind("exists", 0) == 0 && t.text.size() > 6 && t.text[6] == '[') {
      auto index = bracketed_index(t.text, "exists");
      if (!index) {
        --pos_;
        fail("malformed projection '" + t.text + "', expected exists[<i>]");
      }
      return BasicConcept::projection(identifier("a relationship name"), *index);
    }
    if (!is_identifier(t.text)) {
      --pos_;
      fail("expected a basic concept, found '" + t.text + "'");
    }
    return BasicConcept::atomic(t.text);
  }

  void expect_end() {
    if (!done()) {
      fail("unexpected token '" + peek().text + "'");
    }
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const BasicConcept& b) {
  if (b.is_atomic()) {
    return b.name;
  }
  return "exists[" + std::to_string(b.position) + "] " + b.name;
}

std::string to_string(const Assertion& a) {
  return std::visit(
      Overloaded{
          [](const Inclusion& i) { return to_string(i.lhs) + " isa " + to_string(i.rhs); },
          [](const Disjointness& d) { return to_string(d.lhs) + " disj " + to_string(d.rhs); },
          [](const Functionality& f) {
            return "funct [" + std::to_string(f.position) + "] " + f.relationship;
          },
      },
      a);
}

void KnowledgeBase::add_concept(const std::string& name) {
  if (has_concept(name) || arity(name)) {
    throw ValidationError("name '" + name + "' is already declared");
  }
  concepts_.push_back(name);
}

void KnowledgeBase::add_relationship(const std::string& name, std::size_t arity_value) {
  if (has_concept(name) || arity(name)) {
    throw ValidationError("name '" + name + "' is already declared");
  }
  if (arity_value == 0) {
    throw ValidationError("relationship '" + name + "' must have arity >= 1");
  }
  relationships_.emplace_back(name, arity_value);
}

bool KnowledgeBase::has_concept(std::string_view name) const {
  return std::find(concepts_.begin(), concepts_.end(), name) != concepts_.end();
}

std::optional<std::size_t> KnowledgeBase::arity(std::string_view relationship) const {
  for (const auto& [name, n] : relationships_) {
    if (name == relationship) {
      return n;
    }
  }
  return std::nullopt;
}

bool KnowledgeBase::declares(const BasicConcept& b) const {
  if (b.is_atomic()) {
    return has_concept(b.name);
  }
  auto n = arity(b.name);
  return n && b.position >= 1 && b.position <= *n;
}

void KnowledgeBase::check(const BasicConcept& b) const {
  if (b.is_atomic()) {
    if (!has_concept(b.name)) {
      throw ValidationError("undeclared concept '" + b.name + "'");
    }
    return;
  }
  auto n = arity(b.name);
  if (!n) {
    throw ValidationError("undeclared relationship '" + b.name + "'");
  }
  if (b.position < 1 || b.position > *n) {
    throw ValidationError("position " + std::to_string(b.position) + " out of range for '" +
                          b.name + "' of arity " + std::to_string(*n));
  }
}

bool KnowledgeBase::add_assertion(const Assertion& a) {
  std::visit(Overloaded{
                 [&](const Inclusion& i) {
                   check(i.lhs);
                   check(i.rhs);
                 },
                 [&](const Disjointness& d) {
                   check(d.lhs);
                   check(d.rhs);
                 },
                 [&](const Functionality& f) {
                   check(BasicConcept::projection(f.relationship, f.position));
                 },
             },
             a);
  if (!assertion_set_.insert(a).second) {
    return false;
  }
  assertions_.push_back(a);
  normalized_ = false;
  return true;
}

std::vector<Inclusion> KnowledgeBase::inclusions() const {
  std::vector<Inclusion> out;
  for (const auto& a : assertions_) {
    if (auto* i = std::get_if<Inclusion>(&a)) {
      out.push_back(*i);
    }
  }
  return out;
}

std::vector<Disjointness> KnowledgeBase::disjointnesses() const {
  std::vector<Disjointness> out;
  for (const auto& a : assertions_) {
    if (auto* d = std::get_if<Disjointness>(&a)) {
      out.push_back(*d);
    }
  }
  return out;
}

std::vector<Functionality> KnowledgeBase::functionalities() const {
  std::vector<Functionality> out;
  for (const auto& a : assertions_) {
    if (auto* f = std::get_if<Functionality>(&a)) {
      out.push_back(*f);
    }
  }
  return out;
}

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  auto lines = split_lines(text);

  // Declarations first, so assertions may precede the names they use.
  std::vector<std::pair<std::size_t, LineParser>> assertion_lines;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto tokens = tokenize_line(lines[n]);
    if (tokens.empty()) {
      continue;
    }
    LineParser p(std::move(tokens), n + 1);
    const std::string keyword = p.peek().text;
    try {
      if (keyword == "concept") {
        p.next("keyword");
        std::string name = p.identifier("a concept name");
        p.expect_end();
        kb.add_concept(name);
      } else if (keyword == "relationship") {
        p.next("keyword");
        std::string name = p.identifier("a relationship name");
        const Token& kw = p.next("'arity'");
        if (kw.text != "arity") {
          p.rewind(p.position() - 1);
          p.fail("expected 'arity', found '" + kw.text + "'");
        }
        const Token& count = p.next("an arity");
        auto arity = parse_positive(count.text);
        if (!arity) {
          p.rewind(p.position() - 1);
          p.fail("arity must be a positive integer, found '" + count.text + "'");
        }
        p.expect_end();
        kb.add_relationship(name, *arity);
      } else {
        assertion_lines.emplace_back(n + 1, std::move(p));
      }
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), n + 1, 1);
    }
  }

  for (auto& [line, p] : assertion_lines) {
    Assertion assertion;
    if (p.peek().text == "funct") {
      p.next("keyword");
      const Token& idx = p.next("[<i>]");
      auto index = bracketed_index(idx.text, "");
      if (!index) {
        p.rewind(p.position() - 1);
        p.fail("expected [<i>], found '" + idx.text + "'");
      }
      assertion = Functionality{p.identifier("a relationship name"), *index};
    } else {
      BasicConcept lhs = p.basic_concept();
      const Token& op = p.next("'isa' or 'disj'");
      BasicConcept rhs;
      if (op.text == "isa") {
        rhs = p.basic_concept();
        assertion = Inclusion{lhs, rhs};
      } else if (op.text == "disj") {
        rhs = p.basic_concept();
        assertion = Disjointness{lhs, rhs};
      } else {
        p.rewind(p.position() - 1);
        p.fail("expected 'isa' or 'disj', found '" + op.text + "'");
      }
    }
    p.expect_end();
    try {
      kb.add_assertion(assertion);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line, 1);
    }
  }
  return kb;
}

std::string print_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const auto& c : kb.concepts()) {
    out << "concept " << c << '\n';
  }
  for (const auto& [name, arity] : kb.relationships()) {
    out << "relationship " << name << " arity " << arity << '\n';
  }
  for (const auto& a : kb.assertions()) {
    out << to_string(a) << '\n';
  }
  return out.str();
}

KnowledgeBase normalize(const KnowledgeBase& kb) {
  const auto inclusions = kb.inclusions();
  std::set<ConceptPair> disjoint;
  for (const auto& d : kb.disjointnesses()) {
    disjoint.emplace(d.lhs, d.rhs);
  }

  // Index inclusions by their right-hand side for the worklist.
  std::map<BasicConcept, std::vector<BasicConcept>> subsumed_by;
  for (const auto& i : inclusions) {
    subsumed_by[i.rhs].push_back(i.lhs);
  }

  std::set<ConceptPair> derived;
  std::queue<ConceptPair> work;
  for (const auto& p : disjoint) {
    work.push(p);
  }
  auto add = [&](const BasicConcept& a, const BasicConcept& b) {
    if (disjoint.emplace(a, b).second) {
      derived.emplace(a, b);
      work.emplace(a, b);
    }
  };
  while (!work.empty()) {
    auto [left, right] = work.front();
    work.pop();
    // B1 isa right, (right disj left)  =>  B1 disj left
    if (auto it = subsumed_by.find(right); it != subsumed_by.end()) {
      for (const auto& b1 : it->second) {
        add(b1, left);
      }
    }
    // B1 isa left, (right disj left)  =>  B1 disj right
    if (auto it = subsumed_by.find(left); it != subsumed_by.end()) {
      for (const auto& b1 : it->second) {
        add(b1, right);
      }
    }
  }

  std::map<std::pair<std::string, std::string>, ConceptPair> by_key;
  for (const auto& p : derived) {
    auto key = std::make_pair(to_string(p.first), to_string(p.second));
    by_key.emplace(key, p);
  }

  KnowledgeBase out = kb;
  for (const auto& [key, pair] : by_key) {
    out.add_assertion(Disjointness{pair.first, pair.second});
  }
  out.normalized_ = true;
  return out;
}

std::set<BasicConcept> occurring_concepts(const KnowledgeBase& kb) {
  std::set<BasicConcept> out;
  for (const auto& c : kb.concepts()) {
    out.insert(BasicConcept::atomic(c));
  }
  for (const auto& a : kb.assertions()) {
    std::visit(Overloaded{
                   [&](const Inclusion& i) {
                     out.insert(i.lhs);
                     out.insert(i.rhs);
                   },
                   [&](const Disjointness& d) {
                     out.insert(d.lhs);
                     out.insert(d.rhs);
                   },
                   [&](const Functionality& f) {
                     out.insert(BasicConcept::projection(f.relationship, f.position));
                   },
               },
               a);
  }
  return out;
}

std::set<ConceptPair> inclusion_closure(const KnowledgeBase& kb) {
  std::map<BasicConcept, std::vector<BasicConcept>> successors;
  for (const auto& i : kb.inclusions()) {
    successors[i.lhs].push_back(i.rhs);
  }
  std::set<ConceptPair> closure;
  for (const auto& start : occurring_concepts(kb)) {
    std::set<BasicConcept> seen{start};
    std::vector<BasicConcept> stack{start};
    while (!stack.empty()) {
      BasicConcept b = stack.back();
      stack.pop_back();
      closure.emplace(start, b);
      if (auto it = successors.find(b); it != successors.end()) {
        for (const auto& next : it->second) {
          if (seen.insert(next).second) {
            stack.push_back(next);
          }
        }
      }
    }
  }
  return closure;
}

std::set<BasicConcept> empty_concepts(const KnowledgeBase& kb) {
  std::map<BasicConcept, std::set<BasicConcept>> supers;
  for (const auto& [sub, super] : inclusion_closure(kb)) {
    supers[sub].insert(super);
  }
  std::set<BasicConcept> out;
  for (const auto& [b, above] : supers) {
    for (const auto& d : kb.disjointnesses()) {
      if (above.count(d.lhs) && above.count(d.rhs)) {
        out.insert(b);
        break;
      }
    }
  }
  return out;
}

}  // namespace dlrdb
