#pragma once

// Independent reference implementations used only by the tests. They favour
// obviousness over speed and share no code with the library's algorithms.

#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "dlrdb/cq.hpp"
#include "dlrdb/kb.hpp"
#include "dlrdb/query.hpp"
#include "dlrdb/storage.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb::oracle {

/// Every value in `d` plus every constant of `q`.
std::set<Value> active_domain(const ConjunctiveQuery& q, const DatabaseInstance& d);

/// Tries every assignment of the query's variables to the active domain.
AnswerSet enumerate_assignments(const ConjunctiveQuery& q, const DatabaseInstance& d);

/// Tries every combination of one fact per body atom.
AnswerSet nested_loop(const ConjunctiveQuery& q, const DatabaseInstance& d);

/// Disjointness assertions of the closure of `kb` under the normalization
/// rule, recomputed by full rescans until nothing changes.
std::set<Disjointness> naive_disjointness_closure(const KnowledgeBase& kb);

/// Reflexive-transitive closure of the inclusions over `concepts`, by a
/// Floyd-Warshall pass over a boolean matrix.
std::set<ConceptPair> naive_inclusion_closure(const KnowledgeBase& kb,
                                              const std::set<BasicConcept>& concepts);

struct ChaseResult {
  DatabaseInstance database;
  bool terminated = false;
};

/// Restricted chase of `d` under the inclusions of `system.kb`: whenever a
/// component tuple of the left side is missing from the right side, a fact
/// is added whose other positions hold fresh labeled nulls.
ChaseResult chase(const System& system, const DatabaseInstance& d, std::size_t max_facts = 5000);

/// Whether no constant tuple lies in two disjoint components of `d`.
bool satisfies_disjointness(const System& system, const DatabaseInstance& d);

/// Certain answers through the chase, or nullopt when the chase does not
/// terminate within its fact budget.
std::optional<AnswerSet> certain_answers(const ConjunctiveQuery& q, const System& system,
                                         const DatabaseInstance& d);

/// Tuples of the relation of `f` that agree with another tuple on the key
/// component while differing elsewhere, by comparing all pairs.
std::set<Tuple> functionality_offenders(const System& system, const DatabaseInstance& d,
                                        const Functionality& f);

/// Evaluates a conceptual query directly: binds every FROM variable to a
/// fact of its entity's relation and filters by ON and WHERE.
AnswerSet interpret(const ConceptualQuery& q, const System& system, const DatabaseInstance& d);

/// Reads and evaluates the `SELECT DISTINCT ... FROM ... WHERE ...` dialect
/// produced by the translator, including UNION of several selects.
AnswerSet eval_sql(std::string_view sql, const Schema& schema, const DatabaseInstance& d);

/// Whether `a` and `b` are equal up to a bijective renaming of variables and
/// a permutation of body atoms; found by trying all permutations.
bool isomorphic(const ConjunctiveQuery& a, const ConjunctiveQuery& b);

}  // namespace dlrdb::oracle
