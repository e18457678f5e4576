#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dlrdb/schema.hpp"

namespace dlrdb {

/// Placeholder constant introduced by the chase oracle. Never produced by
/// loading data and never part of a certain answer.
struct LabeledNull {
  std::uint64_t id = 0;
  auto operator<=>(const LabeledNull&) const = default;
};

/// A constant of the domain. Equality is syntactic (unique names).
using Value = std::variant<std::string, std::int64_t, LabeledNull>;
using Tuple = std::vector<Value>;

inline bool is_null(const Value& v) { return std::holds_alternative<LabeledNull>(v); }
bool has_null(const Tuple& t);

/// Whether `v` may populate an attribute of type `type`. Nulls fit anywhere.
bool fits(const Value& v, AttributeType type);

/// Literal form: strings double-quoted with `"` and `\` escaped by a
/// backslash, integers in decimal, nulls as `_:n<id>`.
std::string to_literal(const Value& v);

/// Bare form used for CSV cells: the string itself or the decimal integer.
std::string to_text(const Value& v);

std::string to_string(const Tuple& t);

}  // namespace dlrdb
