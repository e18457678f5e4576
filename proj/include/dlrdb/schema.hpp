#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlrdb/kb.hpp"

namespace dlrdb {

enum class AttributeType { kString, kInteger };

std::string_view to_string(AttributeType type);

struct Attribute {
  std::string name;
  AttributeType type = AttributeType::kString;
  bool operator==(const Attribute&) const = default;
};

/// A relation with typed attributes. `components[k]` lists the zero-based
/// attribute indices of component k+1; components never overlap and need
/// not follow attribute order.
struct RelationSchema {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<std::vector<std::size_t>> components;

  std::size_t arity() const { return attributes.size(); }
  std::optional<std::size_t> attribute_index(std::string_view attribute) const;
  /// Indices belonging to no component, ascending.
  std::vector<std::size_t> additional_attributes() const;

  bool operator==(const RelationSchema&) const = default;
};

/// The relational schema: relations in declaration order.
class Schema {
 public:
  /// Validates `relation` and appends it. Throws ValidationError on a
  /// duplicate relation or attribute name, an empty/overlapping component,
  /// or an out-of-range attribute index.
  void add(RelationSchema relation);

  const RelationSchema* find(std::string_view name) const;
  /// Throws ValidationError when absent.
  const RelationSchema& at(std::string_view name) const;

  const std::vector<RelationSchema>& relations() const { return relations_; }

  bool operator==(const Schema&) const = default;

 private:
  std::vector<RelationSchema> relations_;
};

Schema parse_schema(std::string_view text);
std::string print_schema(const Schema& schema);

/// Association of every concept and relationship to a relation.
class Mapping {
 public:
  void map(const std::string& name, const std::string& relation);
  /// The relation for a concept or relationship name, if mapped.
  std::optional<std::string> target(std::string_view name) const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Parses `map <Name> -> <Relation>` lines and validates the result against
/// `kb` and `schema` (see validate_mapping). Throws ParseError.
Mapping parse_mapping(std::string_view text, const KnowledgeBase& kb, const Schema& schema);

/// Every declared name is mapped; targets exist; concepts map to relations
/// with one component and n-ary relationships to relations with n; no
/// relation is the target of two names. Throws ValidationError.
void validate_mapping(const Mapping& mapping, const KnowledgeBase& kb, const Schema& schema);

using Signature = std::vector<AttributeType>;

std::string to_string(const Signature& signature);

/// The relation and zero-based attribute indices a basic concept maps to.
struct ComponentLocation {
  std::string relation;
  std::vector<std::size_t> positions;
  bool operator==(const ComponentLocation&) const = default;
};

/// Throws ValidationError for an unmapped name or a missing component.
ComponentLocation component_of(const BasicConcept& b, const Mapping& mapping, const Schema& schema);
Signature signature(const BasicConcept& b, const Mapping& mapping, const Schema& schema);

struct MappingViolation {
  Inclusion assertion;
  Signature lhs;
  Signature rhs;

  std::string message() const;
};

/// One violation per inclusion whose sides have different signatures.
std::vector<MappingViolation> check_mapping_consistency(const KnowledgeBase& kb, const Schema& schema,
                                                        const Mapping& mapping);

}  // namespace dlrdb
