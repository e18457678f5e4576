#pragma once

#include "dlrdb/kb.hpp"
#include "dlrdb/schema.hpp"

namespace dlrdb {

/// A knowledge base, the relational schema it is mapped onto, and the
/// mapping between them.
struct System {
  KnowledgeBase kb;
  Schema schema;
  Mapping mapping;

  ComponentLocation component_of(const BasicConcept& b) const {
    return dlrdb::component_of(b, mapping, schema);
  }
  Signature signature(const BasicConcept& b) const { return dlrdb::signature(b, mapping, schema); }
  /// The relation a concept or relationship name is mapped to.
  const RelationSchema& relation_of(std::string_view name) const;
};

}  // namespace dlrdb
