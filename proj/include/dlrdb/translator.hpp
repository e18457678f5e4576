#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dlrdb/cq.hpp"
#include "dlrdb/error.hpp"
#include "dlrdb/query.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb {

/// `alias.attribute` over the relational schema.
struct ColumnRef {
  std::string alias;
  std::string attribute;
  auto operator<=>(const ColumnRef&) const = default;
};

struct RelationalMember {
  std::string relation;
  std::string alias;
  auto operator<=>(const RelationalMember&) const = default;
};

struct ColumnEquality {
  ColumnRef left;
  ColumnRef right;
  auto operator<=>(const ColumnEquality&) const = default;
};

struct RelationalBlock {
  std::vector<RelationalMember> members;
  std::vector<ColumnEquality> on;
  bool operator==(const RelationalBlock&) const = default;
};

struct RelationalCondition {
  ColumnRef left;
  std::variant<ColumnRef, Value> right;
  bool operator==(const RelationalCondition&) const = default;
};

/// A select-project-join query over the relational schema.
struct RelationalQuery {
  std::vector<ColumnRef> select;
  std::vector<RelationalBlock> from;
  std::vector<RelationalCondition> where;
  bool operator==(const RelationalQuery&) const = default;
};

/// Raised by to_cq when WHERE conditions equate two distinct constants, so
/// the query has no answers on any database.
class UnsatisfiableQuery : public Error {
 public:
  using Error::Error;
};

/// Replaces each entity by its relation (keeping aliases) and expands every
/// ON equality into attribute equalities pairing the two components in
/// order. Expects a validated query.
RelationalQuery to_relational(const ConceptualQuery& q, const System& system);

/// SQL rendering of a relational query, e.g.
/// `SELECT S.SSurname FROM StudentTable AS S JOIN AttendsTable AS A ON ...`.
std::string print_relational(const RelationalQuery& rq);

/// One atom per alias with variables `v<atom>_<position>`; equalities merge
/// variables (the least name survives) and constants are inlined.
ConjunctiveQuery to_cq(const RelationalQuery& rq, const Schema& schema);

/// `SELECT DISTINCT ... FROM R AS t1, S AS t2 WHERE ...` with join
/// predicates chained in first-occurrence order. Throws ValidationError on
/// an arity mismatch or unknown relation.
std::string cq_to_sql(const ConjunctiveQuery& q, const Schema& schema);

/// Members of `u` joined by UNION, one SELECT per line group.
std::string ucq_to_sql(const UnionCQ& u, const Schema& schema);

}  // namespace dlrdb
