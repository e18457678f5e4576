#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dlrdb/cq.hpp"
#include "dlrdb/schema.hpp"
#include "dlrdb/value.hpp"

namespace dlrdb {

using Relation = std::set<Tuple>;
using AnswerSet = std::set<Tuple>;

/// A finite set of facts, grouped by relation name. Set semantics.
class DatabaseInstance {
 public:
  DatabaseInstance() = default;
  /// One empty relation per relation of `schema`.
  explicit DatabaseInstance(const Schema& schema);

  /// Returns whether the fact was new.
  bool insert(std::string_view relation, Tuple tuple);
  /// The tuples of `relation`; empty when the relation has none.
  const Relation& relation(std::string_view name) const;
  const std::map<std::string, Relation, std::less<>>& relations() const { return relations_; }
  std::size_t fact_count() const;

  bool operator==(const DatabaseInstance&) const = default;

 private:
  std::map<std::string, Relation, std::less<>> relations_;
};

struct LoadResult {
  DatabaseInstance database;
  std::vector<std::string> warnings;
};

/// Reads `<Relation>.csv` for every relation of `schema` from `directory`.
/// A missing file yields an empty relation and a warning. Throws ParseError
/// on a header mismatch or an ill-typed cell (with the row's line number).
LoadResult load_csv(const std::filesystem::path& directory, const Schema& schema);

/// RFC 4180 records of `text`; each record remembers its first line.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};
std::vector<CsvRecord> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

/// Distinct sub-tuples of `relation` at the given zero-based positions.
std::set<Tuple> project_component(const DatabaseInstance& d, std::string_view relation,
                                  const std::vector<std::size_t>& positions);

/// Head bindings of every assignment that maps each body atom to a fact.
AnswerSet eval_cq(const ConjunctiveQuery& q, const DatabaseInstance& d);
AnswerSet eval_ucq(const UnionCQ& u, const DatabaseInstance& d);

}  // namespace dlrdb
