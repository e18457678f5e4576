#include "dlrdb/rewriter.hpp"

#include <algorithm>
#include <set>

namespace dlrdb {

namespace {

bool is_bound(const Term& t, const ConjunctiveQuery& q,
              const std::map<Variable, std::size_t>& occurrences) {
  const auto* v = as_variable(t);
  if (!v) {
    return true;
  }
  if (std::find(q.head.begin(), q.head.end(), t) != q.head.end()) {
    return true;
  }
  auto it = occurrences.find(*v);
  return it != occurrences.end() && it->second >= 2;
}

bool applicable(const Inclusion& i, const Atom& g, const ConjunctiveQuery& q, const System& system,
                const std::map<Variable, std::size_t>& occurrences) {
  ComponentLocation target = system.component_of(i.rhs);
  if (g.relation != target.relation) {
    return false;
  }
  for (std::size_t p = 0; p < g.args.size(); ++p) {
    if (std::find(target.positions.begin(), target.positions.end(), p) != target.positions.end()) {
      continue;
    }
    if (is_bound(g.args[p], q, occurrences)) {
      return false;
    }
  }
  return true;
}

Term resolve(const Substitution& s, Term t) {
  while (const auto* v = as_variable(t)) {
    auto it = s.find(*v);
    if (it == s.end()) {
      break;
    }
    t = it->second;
  }
  return t;
}

// Exact canonical labelling by search over atom orders. At each depth only
// the atoms whose renamed form is least are tried, and identical atoms are
// tried once, so the search is linear unless the query has symmetries.
class CanonicalSearch {
 public:
  using TermKey = std::variant<std::size_t, Value>;

  struct AtomKey {
    std::string relation;
    std::vector<TermKey> args;
    auto operator<=>(const AtomKey&) const = default;
  };

  explicit CanonicalSearch(const ConjunctiveQuery& q) : q_(q), used_(q.body.size(), false) {
    for (const auto& t : q_.head) {
      if (const auto* v = as_variable(t)) {
        names_.emplace(*v, names_.size());
      }
    }
  }

  ConjunctiveQuery run() {
    std::vector<AtomKey> prefix;
    std::vector<std::size_t> order;
    search(prefix, order, true);

    std::map<Variable, std::size_t> names;
    for (const auto& t : q_.head) {
      if (const auto* v = as_variable(t)) {
        names.emplace(*v, names.size());
      }
    }
    for (std::size_t index : best_order_) {
      for (const auto& t : q_.body[index].args) {
        if (const auto* v = as_variable(t)) {
          names.emplace(*v, names.size());
        }
      }
    }
    auto rename = [&](const Term& t) -> Term {
      if (const auto* v = as_variable(t)) {
        return Variable{"v" + std::to_string(names.at(*v) + 1)};
      }
      return t;
    };
    ConjunctiveQuery out;
    for (const auto& t : q_.head) {
      out.head.push_back(rename(t));
    }
    for (std::size_t index : best_order_) {
      Atom atom{q_.body[index].relation, {}};
      for (const auto& t : q_.body[index].args) {
        atom.args.push_back(rename(t));
      }
      out.body.push_back(std::move(atom));
    }
    return out;
  }

 private:
  // Bounds the search on highly symmetric bodies; past it, only the first
  // least candidate is followed at each depth.
  static constexpr std::size_t kNodeLimit = 1 << 18;

  AtomKey key(const Atom& atom) const {
    AtomKey k{atom.relation, {}};
    std::map<Variable, std::size_t> provisional;
    std::size_t next = names_.size();
    for (const auto& t : atom.args) {
      if (const auto* v = as_variable(t)) {
        if (auto it = names_.find(*v); it != names_.end()) {
          k.args.emplace_back(it->second);
        } else {
          auto [p, fresh] = provisional.emplace(*v, next);
          next += fresh ? 1 : 0;
          k.args.emplace_back(p->second);
        }
      } else {
        k.args.emplace_back(std::get<Value>(t));
      }
    }
    return k;
  }

  void search(std::vector<AtomKey>& prefix, std::vector<std::size_t>& order, bool tied) {
    if (order.size() == q_.body.size()) {
      if (!found_ || prefix < best_) {
        best_ = prefix;
        best_order_ = order;
        found_ = true;
      }
      return;
    }
    ++nodes_;
    std::optional<AtomKey> least;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < q_.body.size(); ++i) {
      if (used_[i]) {
        continue;
      }
      AtomKey k = key(q_.body[i]);
      if (!least || k < *least) {
        least = std::move(k);
        candidates.assign(1, i);
      } else if (k == *least) {
        candidates.push_back(i);
      }
    }
    const std::size_t depth = prefix.size();
    if (found_ && tied) {
      if (best_[depth] < *least) {
        return;
      }
      tied = best_[depth] == *least;
    }
    std::set<Atom> tried;
    for (std::size_t i : candidates) {
      if (!tried.insert(q_.body[i]).second) {
        continue;
      }
      std::vector<Variable> added;
      for (const auto& t : q_.body[i].args) {
        if (const auto* v = as_variable(t); v && names_.emplace(*v, names_.size()).second) {
          added.push_back(*v);
        }
      }
      used_[i] = true;
      prefix.push_back(*least);
      order.push_back(i);
      search(prefix, order, tied || !found_);
      order.pop_back();
      prefix.pop_back();
      used_[i] = false;
      for (const auto& v : added) {
        names_.erase(v);
      }
      if (nodes_ > kNodeLimit) {
        break;
      }
    }
  }

  const ConjunctiveQuery& q_;
  std::vector<bool> used_;
  std::map<Variable, std::size_t> names_;
  std::vector<AtomKey> best_;
  std::vector<std::size_t> best_order_;
  bool found_ = false;
  std::size_t nodes_ = 0;
};

}  // namespace

Term apply(const Substitution& s, const Term& t) { return resolve(s, t); }

Atom apply(const Substitution& s, const Atom& a) {
  Atom out{a.relation, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) {
    out.args.push_back(resolve(s, t));
  }
  return out;
}

ConjunctiveQuery apply(const Substitution& s, const ConjunctiveQuery& q) {
  ConjunctiveQuery out;
  for (const auto& t : q.head) {
    out.head.push_back(resolve(s, t));
  }
  for (const auto& a : q.body) {
    out.body.push_back(dlrdb::apply(s, a));
  }
  return out;
}

bool is_bound(const Term& t, const ConjunctiveQuery& q) {
  return is_bound(t, q, body_occurrences(q));
}

bool applicable(const Inclusion& i, const Atom& g, const ConjunctiveQuery& q, const System& system) {
  return applicable(i, g, q, system, body_occurrences(q));
}

Atom gr(const Atom& g, const Inclusion& i, const System& system, FreshVariables& fresh) {
  ComponentLocation source = system.component_of(i.rhs);
  ComponentLocation target = system.component_of(i.lhs);
  if (source.relation != g.relation) {
    throw ValidationError("inclusion '" + to_string(Assertion{i}) + "' does not apply to " +
                          to_string(g));
  }
  if (source.positions.size() != target.positions.size()) {
    throw ValidationError("inclusion '" + to_string(Assertion{i}) +
                          "' relates components of different length");
  }
  const RelationSchema& relation = system.schema.at(target.relation);
  std::vector<std::optional<Term>> args(relation.arity());
  for (std::size_t k = 0; k < target.positions.size(); ++k) {
    args[target.positions[k]] = g.args.at(source.positions[k]);
  }
  Atom out{relation.name, {}};
  out.args.reserve(args.size());
  for (auto& a : args) {
    out.args.push_back(a ? std::move(*a) : Term{fresh.next()});
  }
  return out;
}

std::optional<Substitution> unify(const Atom& g1, const Atom& g2) {
  if (g1.relation != g2.relation || g1.args.size() != g2.args.size()) {
    return std::nullopt;
  }
  Substitution s;
  for (std::size_t p = 0; p < g1.args.size(); ++p) {
    Term a = resolve(s, g1.args[p]);
    Term b = resolve(s, g2.args[p]);
    if (a == b) {
      continue;
    }
    const auto* va = as_variable(a);
    const auto* vb = as_variable(b);
    if (!va && !vb) {
      return std::nullopt;
    }
    if (va && vb) {
      if (*vb < *va) {
        s[*va] = b;
      } else {
        s[*vb] = a;
      }
    } else if (va) {
      s[*va] = b;
    } else {
      s[*vb] = a;
    }
  }
  for (auto& [v, t] : s) {
    t = resolve(s, t);
  }
  return s;
}

ConjunctiveQuery reduce(const ConjunctiveQuery& q, std::size_t first, std::size_t second) {
  if (first >= q.body.size() || second >= q.body.size()) {
    throw ValidationError("reduce: atom index out of range");
  }
  auto mgu = unify(q.body[first], q.body[second]);
  if (!mgu) {
    throw ValidationError("reduce: " + to_string(q.body[first]) + " and " +
                          to_string(q.body[second]) + " do not unify");
  }
  ConjunctiveQuery out = q;
  out.body.erase(out.body.begin() + static_cast<std::ptrdiff_t>(second));
  return dlrdb::apply(*mgu, out);
}

ConjunctiveQuery canonical_form(const ConjunctiveQuery& q) { return CanonicalSearch(q).run(); }

RewriteResult rewrite(const ConjunctiveQuery& q, const System& system, RewriteOptions options) {
  const std::vector<Inclusion> inclusions = system.kb.inclusions();
  FreshVariables fresh;
  std::vector<ConjunctiveQuery> found;
  std::set<ConjunctiveQuery> seen;
  std::size_t steps = 0;

  auto add = [&](const ConjunctiveQuery& candidate) {
    if (++steps > options.max_steps) {
      throw RewriteLimitExceeded("rewriting exceeded " + std::to_string(options.max_steps) +
                                 " steps");
    }
    ConjunctiveQuery c = canonical_form(candidate);
    if (seen.insert(c).second) {
      found.push_back(std::move(c));
    }
  };

  add(q);
  for (std::size_t next = 0; next < found.size(); ++next) {
    const ConjunctiveQuery current = found[next];
    const auto occurrences = body_occurrences(current);
    for (std::size_t j = 0; j < current.body.size(); ++j) {
      for (const auto& inclusion : inclusions) {
        if (applicable(inclusion, current.body[j], current, system, occurrences)) {
          ConjunctiveQuery reformulated = current;
          reformulated.body[j] = gr(current.body[j], inclusion, system, fresh);
          add(reformulated);
        }
      }
    }
    for (std::size_t j = 0; j < current.body.size(); ++j) {
      for (std::size_t k = 0; k < current.body.size(); ++k) {
        if (j != k && unify(current.body[j], current.body[k])) {
          add(reduce(current, j, k));
        }
      }
    }
  }
  return {UnionCQ(std::move(found)), steps};
}

}  // namespace dlrdb
