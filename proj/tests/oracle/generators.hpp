#pragma once

#include <random>

#include "dlrdb/cq.hpp"
#include "dlrdb/kb.hpp"
#include "dlrdb/storage.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb::gen {

using Rng = std::mt19937;

/// Six constants: "a", "b", "c" for string attributes and 1, 2, 3 for
/// integer attributes.
Value random_constant(Rng& rng, AttributeType type);

struct KbLimits {
  std::size_t concepts = 8;
  std::size_t relationships = 4;
  std::size_t max_arity = 3;
  std::size_t assertions = 25;
};

/// A KB with random declarations and assertions over them. Signatures are
/// not considered.
KnowledgeBase random_kb(Rng& rng, const KbLimits& limits = {});

struct SystemLimits {
  std::size_t concepts = 3;
  std::size_t relationships = 2;
  std::size_t max_arity = 2;
  std::size_t inclusions = 6;
  std::size_t disjointnesses = 2;
  std::size_t functionalities = 1;
  /// Inclusions only go from lower to higher ranked names, so the chase
  /// terminates.
  bool acyclic = true;
  /// Also add a pair B1 isa B2, B2 isa B1.
  bool force_cycle = false;
  bool mixed_types = true;
};

/// A mapping-consistent system: each concept or relationship gets its own
/// relation with shuffled component positions and possibly an additional
/// attribute; inclusions relate components of equal signature.
System random_system(Rng& rng, const SystemLimits& limits = {});

/// Up to `max_tuples` random facts per relation.
DatabaseInstance random_instance(Rng& rng, const Schema& schema, std::size_t max_tuples = 4);

/// Up to `max_atoms` atoms over random relations, arguments drawn from
/// `max_variables` variables or random constants, and a head of distinct
/// body variables.
ConjunctiveQuery random_cq(Rng& rng, const Schema& schema, std::size_t max_atoms = 3,
                           std::size_t max_variables = 4);

/// The same KB with declarations and assertions in a random order.
KnowledgeBase shuffled(Rng& rng, const KnowledgeBase& kb);

}  // namespace dlrdb::gen
