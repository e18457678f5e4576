#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlrdb/system.hpp"
#include "dlrdb/value.hpp"

namespace dlrdb {

/// Where a construct starts in the query text. Locations are informative
/// only and never take part in structural equality.
struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourceLocation&, const SourceLocation&) { return true; }
};

/// `V.a` in SELECT or WHERE: an attribute of the relation V's entity maps to.
struct AttributeRef {
  std::string variable;
  std::string attribute;
  SourceLocation location;
  bool operator==(const AttributeRef&) const = default;
};

/// `V` (atomic concept) or `V.i` (i-th component of a relationship) in ON.
struct ComponentRef {
  std::string variable;
  std::optional<std::size_t> position;
  SourceLocation location;
  bool operator==(const ComponentRef&) const = default;
};

struct OnEquality {
  ComponentRef left;
  ComponentRef right;
  bool operator==(const OnEquality&) const = default;
};

/// `C AS V`.
struct JoinMember {
  std::string name;
  std::string variable;
  /// Where the name starts.
  SourceLocation location;
  bool operator==(const JoinMember&) const = default;
};

/// `C1 AS V1 JOIN ... JOIN Ck AS Vk ON e1 = e2 AND ...`; single-member
/// blocks carry no ON conditions.
struct JoinBlock {
  std::vector<JoinMember> members;
  std::vector<OnEquality> on;
  bool operator==(const JoinBlock&) const = default;
};

struct WhereCondition {
  AttributeRef left;
  std::variant<AttributeRef, Value> right;
  bool operator==(const WhereCondition&) const = default;
};

struct ConceptualQuery {
  std::vector<AttributeRef> select;
  std::vector<JoinBlock> from;
  std::vector<WhereCondition> where;

  /// The FROM member declaring `variable`, if any.
  const JoinMember* member(std::string_view variable) const;

  bool operator==(const ConceptualQuery&) const = default;
};

/// Parses SELECT ... FROM ... [WHERE ...]. Keywords are case-insensitive.
/// Throws ParseError on syntax errors, duplicate FROM variables, references
/// to undeclared variables, and ON-clause arity violations of a block.
ConceptualQuery parse_query(std::string_view text);

/// Single-line rendering accepted by parse_query.
std::string print_query(const ConceptualQuery& q);

struct QueryViolation {
  enum class Kind {
    kUnknownName,
    kBadComponentRef,
    kSignatureMismatch,
    kUnknownAttribute,
    kTypeMismatch,
  };
  Kind kind;
  std::string message;
  SourceLocation location;
};

std::string_view to_string(QueryViolation::Kind kind);

/// Checks `q` against the system: names resolve, component references fit
/// the entity, ON sides have equal signatures, attributes exist in the
/// mapped relation, and WHERE equalities are type-correct.
std::vector<QueryViolation> validate_query(const ConceptualQuery& q, const System& system);

}  // namespace dlrdb
