#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dlrdb/value.hpp"

namespace dlrdb {

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

using Term = std::variant<Variable, Value>;

inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }
inline const Variable* as_variable(const Term& t) { return std::get_if<Variable>(&t); }
inline Term var(std::string name) { return Variable{std::move(name)}; }

std::string to_string(const Term& t);

/// A relational atom `relation(args...)`.
struct Atom {
  std::string relation;
  std::vector<Term> args;

  auto operator<=>(const Atom&) const = default;
};

std::string to_string(const Atom& a);

/// `q(head) <- body`. Head terms are usually variables; unification during
/// rewriting may bind a head variable to a constant.
struct ConjunctiveQuery {
  std::vector<Term> head;
  std::vector<Atom> body;

  auto operator<=>(const ConjunctiveQuery&) const = default;
};

std::string to_string(const ConjunctiveQuery& q);

/// Number of occurrences of each variable in the body.
std::map<Variable, std::size_t> body_occurrences(const ConjunctiveQuery& q);
std::set<Variable> variables(const ConjunctiveQuery& q);

/// Head variables occur in the body and atom arities match `schema`.
/// Throws ValidationError.
void check_well_formed(const ConjunctiveQuery& q, const Schema& schema);

/// Non-empty list of conjunctive queries with equal head arity.
class UnionCQ {
 public:
  UnionCQ() = default;
  /// Throws ValidationError if `members` is empty or head arities differ.
  explicit UnionCQ(std::vector<ConjunctiveQuery> members);

  const std::vector<ConjunctiveQuery>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<ConjunctiveQuery> members_;
};

}  // namespace dlrdb
