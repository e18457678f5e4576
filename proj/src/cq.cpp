#include "dlrdb/cq.hpp"

#include "dlrdb/error.hpp"

namespace dlrdb {

std::string to_string(const Term& t) {
  if (const auto* v = as_variable(t)) {
    return v->name;
  }
  return to_literal(std::get<Value>(t));
}

std::string to_string(const Atom& a) {
  std::string out = a.relation + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    out += (i ? ", " : "") + to_string(a.args[i]);
  }
  return out + ")";
}

std::string to_string(const ConjunctiveQuery& q) {
  std::string out = "q(";
  for (std::size_t i = 0; i < q.head.size(); ++i) {
    out += (i ? ", " : "") + to_string(q.head[i]);
  }
  out += ") <- ";
  for (std::size_t i = 0; i < q.body.size(); ++i) {
    out += (i ? ", " : "") + to_string(q.body[i]);
  }
  return out;
}

std::map<Variable, std::size_t> body_occurrences(const ConjunctiveQuery& q) {
  std::map<Variable, std::size_t> out;
  for (const auto& atom : q.body) {
    for (const auto& t : atom.args) {
      if (const auto* v = as_variable(t)) {
        ++out[*v];
      }
    }
  }
  return out;
}

std::set<Variable> variables(const ConjunctiveQuery& q) {
  std::set<Variable> out;
  for (const auto& t : q.head) {
    if (const auto* v = as_variable(t)) {
      out.insert(*v);
    }
  }
  for (const auto& [v, count] : body_occurrences(q)) {
    out.insert(v);
  }
  return out;
}

void check_well_formed(const ConjunctiveQuery& q, const Schema& schema) {
  auto occurrences = body_occurrences(q);
  for (const auto& t : q.head) {
    if (const auto* v = as_variable(t); v && !occurrences.count(*v)) {
      throw ValidationError("head variable " + v->name + " does not occur in the body");
    }
  }
  for (const auto& atom : q.body) {
    const RelationSchema& rel = schema.at(atom.relation);
    if (rel.arity() != atom.args.size()) {
      throw ValidationError("atom " + to_string(atom) + " has " + std::to_string(atom.args.size()) +
                            " arguments, relation has " + std::to_string(rel.arity()));
    }
  }
}

UnionCQ::UnionCQ(std::vector<ConjunctiveQuery> members) : members_(std::move(members)) {
  if (members_.empty()) {
    throw ValidationError("a union of conjunctive queries needs at least one member");
  }
  for (const auto& q : members_) {
    if (q.head.size() != members_.front().head.size()) {
      throw ValidationError("members of a union must have the same head arity");
    }
  }
}

}  // namespace dlrdb
