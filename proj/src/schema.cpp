#include "dlrdb/schema.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "dlrdb/error.hpp"

namespace dlrdb {

namespace {

// Character-level cursor over a single line of schema or mapping text.
class Cursor {
 public:
  Cursor(std::string_view line, std::size_t line_number) : line_(line), line_number_(line_number) {
    if (auto hash = line_.find('#'); hash != std::string_view::npos) {
      line_ = line_.substr(0, hash);
    }
  }

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_number_, pos_ + 1);
  }

  std::string identifier(const char* what) {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < line_.size() &&
        (std::isalpha(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_')) {
      ++pos_;
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) {
      fail(std::string("expected ") + what);
    }
    return std::string(line_.substr(start, pos_ - start));
  }

  std::size_t number(const char* what) {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(line_.data() + pos_, line_.data() + line_.size(), value);
    if (ec != std::errc()) {
      fail(std::string("expected ") + what);
    }
    pos_ = static_cast<std::size_t>(ptr - line_.data());
    return value;
  }

  void expect(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_end() {
    if (!at_end()) {
      fail("unexpected trailing text");
    }
  }

  std::size_t column() const { return pos_ + 1; }

 private:
  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

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

struct PendingRelation {
  RelationSchema relation;
  std::map<std::size_t, std::vector<std::size_t>> components;
  std::size_t line = 0;
};

}  // namespace

std::string_view to_string(AttributeType type) {
  return type == AttributeType::kString ? "string" : "integer";
}

std::optional<std::size_t> RelationSchema::attribute_index(std::string_view attribute) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == attribute) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> RelationSchema::additional_attributes() const {
  std::vector<bool> used(attributes.size(), false);
  for (const auto& component : components) {
    for (std::size_t p : component) {
      used[p] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) {
      out.push_back(i);
    }
  }
  return out;
}

void Schema::add(RelationSchema relation) {
  if (find(relation.name)) {
    throw ValidationError("relation '" + relation.name + "' is already declared");
  }
  if (relation.attributes.empty()) {
    throw ValidationError("relation '" + relation.name + "' has no attributes");
  }
  std::set<std::string> names;
  for (const auto& a : relation.attributes) {
    if (!names.insert(a.name).second) {
      throw ValidationError("duplicate attribute '" + a.name + "' in relation '" + relation.name +
                            "'");
    }
  }
  std::set<std::size_t> covered;
  for (std::size_t k = 0; k < relation.components.size(); ++k) {
    const auto& component = relation.components[k];
    if (component.empty()) {
      throw ValidationError("component " + std::to_string(k + 1) + " of relation '" +
                            relation.name + "' is empty");
    }
    for (std::size_t p : component) {
      if (p >= relation.attributes.size()) {
        throw ValidationError("component " + std::to_string(k + 1) + " of relation '" +
                              relation.name + "' references a missing attribute");
      }
      if (!covered.insert(p).second) {
        throw ValidationError("components of relation '" + relation.name +
                              "' overlap on attribute '" + relation.attributes[p].name + "'");
      }
    }
  }
  relations_.push_back(std::move(relation));
}

const RelationSchema* Schema::find(std::string_view name) const {
  for (const auto& r : relations_) {
    if (r.name == name) {
      return &r;
    }
  }
  return nullptr;
}

const RelationSchema& Schema::at(std::string_view name) const {
  if (const auto* r = find(name)) {
    return *r;
  }
  throw ValidationError("unknown relation '" + std::string(name) + "'");
}

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::optional<PendingRelation> pending;

  auto finish = [&]() {
    if (!pending) {
      return;
    }
    auto& rel = pending->relation;
    std::size_t expected = 1;
    for (auto& [index, positions] : pending->components) {
      if (index != expected) {
        throw ParseError("relation '" + rel.name + "' is missing component " +
                             std::to_string(expected),
                         pending->line);
      }
      rel.components.push_back(std::move(positions));
      ++expected;
    }
    try {
      schema.add(std::move(rel));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), pending->line);
    }
    pending.reset();
  };

  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Cursor c(lines[n], n + 1);
    if (c.at_end()) {
      continue;
    }
    std::string keyword = c.identifier("'relation' or 'component'");
    if (keyword == "relation") {
      finish();
      PendingRelation next;
      next.line = n + 1;
      next.relation.name = c.identifier("a relation name");
      c.expect("(");
      do {
        Attribute attribute;
        attribute.name = c.identifier("an attribute name");
        c.expect(":");
        std::string type = c.identifier("an attribute type");
        if (type == "string") {
          attribute.type = AttributeType::kString;
        } else if (type == "integer") {
          attribute.type = AttributeType::kInteger;
        } else {
          c.fail("unknown attribute type '" + type + "', expected string or integer");
        }
        next.relation.attributes.push_back(std::move(attribute));
      } while (c.accept(','));
      c.expect(")");
      c.expect_end();
      pending = std::move(next);
    } else if (keyword == "component") {
      if (!pending) {
        c.fail("component declared outside of a relation");
      }
      std::size_t column = c.column();
      std::size_t index = c.number("a component index");
      if (index == 0) {
        throw ParseError("component indices start at 1", n + 1, column);
      }
      if (pending->components.count(index)) {
        throw ParseError("component " + std::to_string(index) + " declared twice", n + 1, column);
      }
      c.expect("=");
      c.expect("(");
      std::vector<std::size_t> positions;
      do {
        std::size_t attr_column = c.column();
        std::string name = c.identifier("an attribute name");
        auto index_of = pending->relation.attribute_index(name);
        if (!index_of) {
          throw ParseError("unknown attribute '" + name + "' in relation '" +
                               pending->relation.name + "'",
                           n + 1, attr_column);
        }
        positions.push_back(*index_of);
      } while (c.accept(','));
      c.expect(")");
      c.expect_end();
      pending->components.emplace(index, std::move(positions));
    } else {
      throw ParseError("expected 'relation' or 'component', found '" + keyword + "'", n + 1, 1);
    }
  }
  finish();
  return schema;
}

std::string print_schema(const Schema& schema) {
  std::ostringstream out;
  for (const auto& r : schema.relations()) {
    out << "relation " << r.name << '(';
    for (std::size_t i = 0; i < r.attributes.size(); ++i) {
      out << (i ? ", " : "") << r.attributes[i].name << ": " << to_string(r.attributes[i].type);
    }
    out << ")\n";
    for (std::size_t k = 0; k < r.components.size(); ++k) {
      out << "  component " << k + 1 << " = (";
      for (std::size_t i = 0; i < r.components[k].size(); ++i) {
        out << (i ? ", " : "") << r.attributes[r.components[k][i]].name;
      }
      out << ")\n";
    }
  }
  return out.str();
}

void Mapping::map(const std::string& name, const std::string& relation) {
  if (!entries_.emplace(name, relation).second) {
    throw ValidationError("'" + name + "' is mapped twice");
  }
}

std::optional<std::string> Mapping::target(std::string_view name) const {
  if (auto it = entries_.find(name); it != entries_.end()) {
    return it->second;
  }
  return std::nullopt;
}

Mapping parse_mapping(std::string_view text, const KnowledgeBase& kb, const Schema& schema) {
  Mapping mapping;
  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Cursor c(lines[n], n + 1);
    if (c.at_end()) {
      continue;
    }
    std::string keyword = c.identifier("'map'");
    if (keyword != "map") {
      throw ParseError("expected 'map', found '" + keyword + "'", n + 1, 1);
    }
    std::size_t column = c.column();
    std::string name = c.identifier("a concept or relationship name");
    c.expect("->");
    std::string relation = c.identifier("a relation name");
    c.expect_end();
    if (!kb.has_concept(name) && !kb.arity(name)) {
      throw ParseError("'" + name + "' is not a declared concept or relationship", n + 1, column);
    }
    try {
      mapping.map(name, relation);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), n + 1, column);
    }
  }
  try {
    validate_mapping(mapping, kb, schema);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
  return mapping;
}

void validate_mapping(const Mapping& mapping, const KnowledgeBase& kb, const Schema& schema) {
  std::map<std::string, std::string> owner;
  auto check = [&](const std::string& name, std::size_t components, const char* kind) {
    auto target = mapping.target(name);
    if (!target) {
      throw ValidationError(std::string(kind) + " '" + name + "' is not mapped");
    }
    const RelationSchema* rel = schema.find(*target);
    if (!rel) {
      throw ValidationError("'" + name + "' is mapped to undeclared relation '" + *target + "'");
    }
    if (rel->components.size() != components) {
      throw ValidationError("'" + name + "' needs a relation with " + std::to_string(components) +
                            " component(s), but '" + *target + "' has " +
                            std::to_string(rel->components.size()));
    }
    auto [it, fresh] = owner.emplace(*target, name);
    if (!fresh) {
      throw ValidationError("relation '" + *target + "' is the target of both '" + it->second +
                            "' and '" + name + "'");
    }
  };
  for (const auto& c : kb.concepts()) {
    check(c, 1, "concept");
  }
  for (const auto& [name, arity] : kb.relationships()) {
    check(name, arity, "relationship");
  }
  for (const auto& [name, target] : mapping.entries()) {
    if (!kb.has_concept(name) && !kb.arity(name)) {
      throw ValidationError("'" + name + "' is not a declared concept or relationship");
    }
  }
}

std::string to_string(const Signature& signature) {
  std::string out = "(";
  for (std::size_t i = 0; i < signature.size(); ++i) {
    out += (i ? ", " : "");
    out += to_string(signature[i]);
  }
  return out + ")";
}

ComponentLocation component_of(const BasicConcept& b, const Mapping& mapping, const Schema& schema) {
  auto target = mapping.target(b.name);
  if (!target) {
    throw ValidationError("'" + b.name + "' is not mapped");
  }
  const RelationSchema& rel = schema.at(*target);
  std::size_t index = b.is_atomic() ? 1 : b.position;
  if (index < 1 || index > rel.components.size()) {
    throw ValidationError("relation '" + rel.name + "' has no component " + std::to_string(index) +
                          " for " + to_string(b));
  }
  return {rel.name, rel.components[index - 1]};
}

Signature signature(const BasicConcept& b, const Mapping& mapping, const Schema& schema) {
  ComponentLocation loc = component_of(b, mapping, schema);
  const RelationSchema& rel = schema.at(loc.relation);
  Signature out;
  out.reserve(loc.positions.size());
  for (std::size_t p : loc.positions) {
    out.push_back(rel.attributes[p].type);
  }
  return out;
}

std::string MappingViolation::message() const {
  return "inclusion '" + to_string(Assertion{assertion}) + "' relates signature " + to_string(lhs) +
         " to " + to_string(rhs);
}

std::vector<MappingViolation> check_mapping_consistency(const KnowledgeBase& kb, const Schema& schema,
                                                        const Mapping& mapping) {
  std::vector<MappingViolation> out;
  for (const auto& i : kb.inclusions()) {
    Signature lhs = signature(i.lhs, mapping, schema);
    Signature rhs = signature(i.rhs, mapping, schema);
    if (lhs != rhs) {
      out.push_back({i, std::move(lhs), std::move(rhs)});
    }
  }
  return out;
}

}  // namespace dlrdb
