#include "dlrdb/translator.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace dlrdb {

namespace {

std::string print(const ColumnRef& c) { return c.alias + "." + c.attribute; }

// Disjoint sets over body slots (atom, position).
class SlotPartition {
 public:
  explicit SlotPartition(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

RelationalQuery to_relational(const ConceptualQuery& q, const System& system) {
  RelationalQuery rq;
  for (const auto& s : q.select) {
    rq.select.push_back({s.variable, s.attribute});
  }

  auto side = [&](const ComponentRef& ref) {
    const JoinMember* m = q.member(ref.variable);
    BasicConcept b = ref.position ? BasicConcept::projection(m->name, *ref.position)
                                  : BasicConcept::atomic(m->name);
    ComponentLocation loc = system.component_of(b);
    const RelationSchema& rel = system.schema.at(loc.relation);
    std::vector<ColumnRef> columns;
    for (std::size_t p : loc.positions) {
      columns.push_back({ref.variable, rel.attributes[p].name});
    }
    return columns;
  };

  for (const auto& block : q.from) {
    RelationalBlock out;
    for (const auto& m : block.members) {
      out.members.push_back({system.relation_of(m.name).name, m.variable});
    }
    for (const auto& e : block.on) {
      auto left = side(e.left);
      auto right = side(e.right);
      for (std::size_t i = 0; i < left.size() && i < right.size(); ++i) {
        out.on.push_back({left[i], right[i]});
      }
    }
    rq.from.push_back(std::move(out));
  }

  for (const auto& w : q.where) {
    RelationalCondition c{{w.left.variable, w.left.attribute}, Value{}};
    if (const auto* r = std::get_if<AttributeRef>(&w.right)) {
      c.right = ColumnRef{r->variable, r->attribute};
    } else {
      c.right = std::get<Value>(w.right);
    }
    rq.where.push_back(std::move(c));
  }
  return rq;
}

std::string print_relational(const RelationalQuery& rq) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < rq.select.size(); ++i) {
    out += (i ? ", " : "") + print(rq.select[i]);
  }
  out += " FROM ";
  for (std::size_t b = 0; b < rq.from.size(); ++b) {
    const auto& block = rq.from[b];
    out += b ? ", " : "";
    for (std::size_t i = 0; i < block.members.size(); ++i) {
      out += (i ? " JOIN " : "") + block.members[i].relation + " AS " + block.members[i].alias;
    }
    for (std::size_t i = 0; i < block.on.size(); ++i) {
      out += (i ? " AND " : " ON ") + print(block.on[i].left) + " = " + print(block.on[i].right);
    }
  }
  for (std::size_t i = 0; i < rq.where.size(); ++i) {
    const auto& w = rq.where[i];
    out += (i ? " AND " : " WHERE ") + print(w.left) + " = ";
    if (const auto* r = std::get_if<ColumnRef>(&w.right)) {
      out += print(*r);
    } else {
      out += to_literal(std::get<Value>(w.right));
    }
  }
  return out;
}

ConjunctiveQuery to_cq(const RelationalQuery& rq, const Schema& schema) {
  struct AliasInfo {
    const RelationSchema* relation;
    std::size_t first_slot;
  };
  std::map<std::string, AliasInfo> aliases;
  std::vector<const RelationSchema*> atoms;
  std::vector<std::size_t> atom_first_slot;
  std::vector<std::string> slot_names;
  for (const auto& block : rq.from) {
    for (const auto& m : block.members) {
      const RelationSchema& rel = schema.at(m.relation);
      aliases[m.alias] = {&rel, slot_names.size()};
      atom_first_slot.push_back(slot_names.size());
      for (std::size_t p = 0; p < rel.arity(); ++p) {
        slot_names.push_back("v" + std::to_string(atoms.size() + 1) + "_" + std::to_string(p + 1));
      }
      atoms.push_back(&rel);
    }
  }

  auto slot = [&](const ColumnRef& c) {
    const AliasInfo& info = aliases.at(c.alias);
    auto index = info.relation->attribute_index(c.attribute);
    if (!index) {
      throw ValidationError("relation " + info.relation->name + " has no attribute '" +
                            c.attribute + "'");
    }
    return info.first_slot + *index;
  };

  SlotPartition partition(slot_names.size());
  for (const auto& block : rq.from) {
    for (const auto& e : block.on) {
      partition.unite(slot(e.left), slot(e.right));
    }
  }
  std::vector<std::pair<std::size_t, Value>> pinned;
  for (const auto& w : rq.where) {
    if (const auto* r = std::get_if<ColumnRef>(&w.right)) {
      partition.unite(slot(w.left), slot(*r));
    } else {
      pinned.emplace_back(slot(w.left), std::get<Value>(w.right));
    }
  }

  std::map<std::size_t, std::string> least_name;
  for (std::size_t s = 0; s < slot_names.size(); ++s) {
    auto [it, fresh] = least_name.emplace(partition.find(s), slot_names[s]);
    if (!fresh && slot_names[s] < it->second) {
      it->second = slot_names[s];
    }
  }
  std::map<std::size_t, Value> constant;
  for (const auto& [s, value] : pinned) {
    auto [it, fresh] = constant.emplace(partition.find(s), value);
    if (!fresh && it->second != value) {
      throw UnsatisfiableQuery("conditions require " + to_literal(it->second) + " = " +
                               to_literal(value));
    }
  }

  auto term_of = [&](std::size_t s) -> Term {
    std::size_t root = partition.find(s);
    if (auto it = constant.find(root); it != constant.end()) {
      return it->second;
    }
    return Variable{least_name.at(root)};
  };

  ConjunctiveQuery q;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    Atom atom{atoms[a]->name, {}};
    for (std::size_t p = 0; p < atoms[a]->arity(); ++p) {
      atom.args.push_back(term_of(atom_first_slot[a] + p));
    }
    q.body.push_back(std::move(atom));
  }
  for (const auto& c : rq.select) {
    q.head.push_back(term_of(slot(c)));
  }
  return q;
}

std::string cq_to_sql(const ConjunctiveQuery& q, const Schema& schema) {
  std::vector<const RelationSchema*> relations;
  for (const auto& atom : q.body) {
    const RelationSchema& rel = schema.at(atom.relation);
    if (rel.arity() != atom.args.size()) {
      throw ValidationError("atom " + to_string(atom) + " does not match the arity of " + rel.name);
    }
    relations.push_back(&rel);
  }
  auto column = [&](std::size_t a, std::size_t p) {
    return "t" + std::to_string(a + 1) + "." + relations[a]->attributes[p].name;
  };

  std::map<Variable, std::string> first_column;
  std::map<Variable, std::string> last_column;
  std::vector<std::string> predicates;
  for (std::size_t a = 0; a < q.body.size(); ++a) {
    for (std::size_t p = 0; p < q.body[a].args.size(); ++p) {
      const Term& t = q.body[a].args[p];
      std::string col = column(a, p);
      if (const auto* v = as_variable(t)) {
        if (auto it = last_column.find(*v); it != last_column.end()) {
          predicates.push_back(it->second + " = " + col);
          it->second = col;
        } else {
          first_column.emplace(*v, col);
          last_column.emplace(*v, col);
        }
      } else {
        predicates.push_back(col + " = " + to_literal(std::get<Value>(t)));
      }
    }
  }

  std::string out = "SELECT DISTINCT ";
  if (q.head.empty()) {
    out += "1";
  }
  for (std::size_t i = 0; i < q.head.size(); ++i) {
    out += i ? ", " : "";
    if (const auto* v = as_variable(q.head[i])) {
      auto it = first_column.find(*v);
      if (it == first_column.end()) {
        throw ValidationError("head variable " + v->name + " does not occur in the body");
      }
      out += it->second;
    } else {
      out += to_literal(std::get<Value>(q.head[i]));
    }
  }
  out += " FROM ";
  for (std::size_t a = 0; a < relations.size(); ++a) {
    out += (a ? ", " : "") + relations[a]->name + " AS t" + std::to_string(a + 1);
  }
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    out += (i ? " AND " : " WHERE ") + predicates[i];
  }
  return out;
}

std::string ucq_to_sql(const UnionCQ& u, const Schema& schema) {
  std::string out;
  for (std::size_t i = 0; i < u.members().size(); ++i) {
    out += (i ? "\nUNION\n" : "") + cq_to_sql(u.members()[i], schema);
  }
  return out;
}

}  // namespace dlrdb
