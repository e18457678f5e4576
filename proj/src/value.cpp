#include "dlrdb/value.hpp"

#include <algorithm>

#include "overloaded.hpp"

namespace dlrdb {

using detail::Overloaded;

bool has_null(const Tuple& t) { return std::any_of(t.begin(), t.end(), is_null); }

bool fits(const Value& v, AttributeType type) {
  return std::visit(Overloaded{
                        [&](const std::string&) { return type == AttributeType::kString; },
                        [&](std::int64_t) { return type == AttributeType::kInteger; },
                        [](const LabeledNull&) { return true; },
                    },
                    v);
}

std::string to_literal(const Value& v) {
  return std::visit(Overloaded{
                        [](const std::string& s) {
                          std::string out = "\"";
                          for (char c : s) {
                            if (c == '"' || c == '\\') {
                              out += '\\';
                            }
                            out += c;
                          }
                          return out + "\"";
                        },
                        [](std::int64_t i) { return std::to_string(i); },
                        [](const LabeledNull& n) { return "_:n" + std::to_string(n.id); },
                    },
                    v);
}

std::string to_text(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) {
    return *s;
  }
  return to_literal(v);
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += (i ? ", " : "") + to_literal(t[i]);
  }
  return out + ")";
}

}  // namespace dlrdb
