#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dlrdb/storage.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb {

struct Violation {
  enum class Kind { kDisjointness, kFunctionality, kInclusion };

  /// At most this many witness tuples are recorded per violation.
  static constexpr std::size_t kMaxWitnesses = 10;

  Kind kind;
  std::string assertion;
  std::vector<std::string> relations;
  std::vector<Tuple> witnesses;
};

std::string_view to_string(Violation::Kind kind);

struct ConsistencyReport {
  std::vector<Violation> violations;
  bool consistent() const { return violations.empty(); }
};

/// Disjointness and functionality assertions, in assertion order. A
/// disjointness between components of different signatures never fails.
/// Functionality witnesses are the tuples sharing their key with another.
ConsistencyReport df_consistent(const System& system, const DatabaseInstance& d);

/// df_consistent plus containment of every inclusion's component
/// projections; all violations are reported in assertion order.
ConsistencyReport full_consistency(const System& system, const DatabaseInstance& d);

std::string render_text(const ConsistencyReport& report);
/// `{"consistent": bool, "violations": [{"kind", "assertion", "relations",
/// "witnesses"}]}`.
nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const Value& v);

}  // namespace dlrdb
