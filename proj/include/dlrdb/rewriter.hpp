#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "dlrdb/cq.hpp"
#include "dlrdb/error.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb {

/// Finite map from variables to terms. Substitutions built by unify are
/// resolved: no variable in the range is also in the domain.
using Substitution = std::map<Variable, Term>;

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
/// Applies `s` to both head and body.
ConjunctiveQuery apply(const Substitution& s, const ConjunctiveQuery& q);

/// A constant, a head variable, or a variable occurring at least twice in
/// the body of `q`.
bool is_bound(const Term& t, const ConjunctiveQuery& q);

/// Whether inclusion `i` can rewrite atom `g` of `q`: `g` is over the
/// relation of the inclusion's right-hand side, and every argument outside
/// that side's component is an unbound variable.
bool applicable(const Inclusion& i, const Atom& g, const ConjunctiveQuery& q, const System& system);

/// Generates variables `f1`, `f2`, ... that never collide with the `v<n>`
/// names produced by canonical_form.
class FreshVariables {
 public:
  Variable next() { return Variable{"f" + std::to_string(++counter_)}; }

 private:
  std::size_t counter_ = 0;
};

/// The atom over the relation of `i`'s left-hand side whose component
/// receives, in order, the arguments `g` has at the right-hand side's
/// component; every other position gets a fresh variable.
Atom gr(const Atom& g, const Inclusion& i, const System& system, FreshVariables& fresh);

/// Most general unifier of two function-free atoms. Variable-constant pairs
/// bind the variable; of two variables the lexicographically greater is
/// bound to the lesser.
std::optional<Substitution> unify(const Atom& g1, const Atom& g2);

/// Drops body atom `second`, then applies mgu(body[first], body[second]) to
/// the whole query. Throws ValidationError when the atoms do not unify or
/// an index is out of range.
ConjunctiveQuery reduce(const ConjunctiveQuery& q, std::size_t first, std::size_t second);

/// Representative of the isomorphism class of `q`: head variables are
/// renamed v1, v2, ... in head order, then body atoms are ordered (and the
/// remaining variables renamed by first occurrence) so that the body is the
/// lexicographically least over all atom orders. Two queries get the same
/// canonical form iff they are equal up to variable renaming and atom order.
ConjunctiveQuery canonical_form(const ConjunctiveQuery& q);

struct RewriteOptions {
  /// Upper bound on candidate queries generated before giving up.
  std::size_t max_steps = 1'000'000;
};

struct RewriteResult {
  UnionCQ ucq;
  /// Candidate queries generated (gr and reduce applications plus the input).
  std::size_t steps = 0;
};

class RewriteLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Closes {q} under atom reformulation through applicable inclusions and
/// under reduction of unifiable atom pairs. Members are canonical forms in
/// discovery order; the first member is canonical_form(q). Functionality and
/// disjointness assertions play no role.
RewriteResult rewrite(const ConjunctiveQuery& q, const System& system, RewriteOptions options = {});

}  // namespace dlrdb
