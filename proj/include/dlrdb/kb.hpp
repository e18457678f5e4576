#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dlrdb {

/// A basic concept: an atomic concept `A` or the projection `exists[i] R` of
/// relationship `R` on its i-th argument (1-based).
struct BasicConcept {
  enum class Kind { kAtomic, kProjection };

  Kind kind = Kind::kAtomic;
  std::string name;
  std::size_t position = 0;  // only meaningful for kProjection

  static BasicConcept atomic(std::string name) { return {Kind::kAtomic, std::move(name), 0}; }
  static BasicConcept projection(std::string relationship, std::size_t position) {
    return {Kind::kProjection, std::move(relationship), position};
  }

  bool is_atomic() const { return kind == Kind::kAtomic; }

  auto operator<=>(const BasicConcept&) const = default;
};

struct Inclusion {
  BasicConcept lhs;
  BasicConcept rhs;
  auto operator<=>(const Inclusion&) const = default;
};

struct Disjointness {
  BasicConcept lhs;
  BasicConcept rhs;
  auto operator<=>(const Disjointness&) const = default;
};

struct Functionality {
  std::string relationship;
  std::size_t position = 0;
  auto operator<=>(const Functionality&) const = default;
};

using Assertion = std::variant<Inclusion, Disjointness, Functionality>;

std::string to_string(const BasicConcept& b);
std::string to_string(const Assertion& a);

/// A DLR-Lite TBox: declared concepts and relationships plus assertions.
/// Assertions are kept in insertion order and deduplicated structurally.
class KnowledgeBase {
 public:
  /// Throws ValidationError on a duplicate or clashing name.
  void add_concept(const std::string& name);
  void add_relationship(const std::string& name, std::size_t arity);

  /// Adds `a` unless an equal assertion is present; returns whether it was
  /// added. Throws ValidationError when `a` mentions an undeclared name or a
  /// position outside the relationship's arity.
  bool add_assertion(const Assertion& a);

  bool has_concept(std::string_view name) const;
  std::optional<std::size_t> arity(std::string_view relationship) const;
  bool declares(const BasicConcept& b) const;

  const std::vector<std::string>& concepts() const { return concepts_; }
  const std::vector<std::pair<std::string, std::size_t>>& relationships() const {
    return relationships_;
  }
  const std::vector<Assertion>& assertions() const { return assertions_; }

  std::vector<Inclusion> inclusions() const;
  std::vector<Disjointness> disjointnesses() const;
  std::vector<Functionality> functionalities() const;

  bool normalized() const { return normalized_; }

 private:
  friend KnowledgeBase normalize(const KnowledgeBase& kb);

  void check(const BasicConcept& b) const;

  std::vector<std::string> concepts_;
  std::vector<std::pair<std::string, std::size_t>> relationships_;
  std::vector<Assertion> assertions_;
  std::set<Assertion> assertion_set_;
  bool normalized_ = false;
};

/// Parses the line-oriented KB format. Names may be used before they are
/// declared. Throws ParseError (with line and column) on any problem.
KnowledgeBase parse_kb(std::string_view text);

/// Renders `kb` in the format accepted by parse_kb.
std::string print_kb(const KnowledgeBase& kb);

/// Closes `kb` under: B1 isa B2 and (B2 disj B3 or B3 disj B2) gives
/// B1 disj B3. Original assertions keep their order; derived disjointness
/// assertions are appended sorted by their textual (lhs, rhs) form.
KnowledgeBase normalize(const KnowledgeBase& kb);

/// Every basic concept mentioned by an assertion, plus every declared
/// atomic concept.
std::set<BasicConcept> occurring_concepts(const KnowledgeBase& kb);

using ConceptPair = std::pair<BasicConcept, BasicConcept>;

/// Reflexive-transitive closure of the inclusion relation over
/// occurring_concepts(kb).
std::set<ConceptPair> inclusion_closure(const KnowledgeBase& kb);

/// Basic concepts that are empty in every model: B such that B is included
/// in C1 and C2 with C1 disj C2 asserted. Expects a normalized KB.
std::set<BasicConcept> empty_concepts(const KnowledgeBase& kb);

}  // namespace dlrdb
