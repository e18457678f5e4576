#include "dlrdb/consistency.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "overloaded.hpp"

namespace dlrdb {

namespace {

using detail::Overloaded;

std::optional<Violation> check(const Disjointness& d, const System& system,
                               const DatabaseInstance& db) {
  if (system.signature(d.lhs) != system.signature(d.rhs)) {
    return std::nullopt;
  }
  ComponentLocation left = system.component_of(d.lhs);
  ComponentLocation right = system.component_of(d.rhs);
  auto a = project_component(db, left.relation, left.positions);
  auto b = project_component(db, right.relation, right.positions);
  std::vector<Tuple> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.empty()) {
    return std::nullopt;
  }
  Violation v{Violation::Kind::kDisjointness, to_string(Assertion{d}), {left.relation}, {}};
  if (right.relation != left.relation) {
    v.relations.push_back(right.relation);
  }
  common.resize(std::min(common.size(), Violation::kMaxWitnesses));
  v.witnesses = std::move(common);
  return v;
}

std::optional<Violation> check(const Functionality& f, const System& system,
                               const DatabaseInstance& db) {
  ComponentLocation key = system.component_of(BasicConcept::projection(f.relationship, f.position));
  const Relation& tuples = db.relation(key.relation);
  if (project_component(db, key.relation, key.positions).size() == tuples.size()) {
    return std::nullopt;
  }
  std::map<Tuple, std::vector<const Tuple*>> groups;
  for (const auto& t : tuples) {
    Tuple k;
    for (std::size_t p : key.positions) {
      k.push_back(t[p]);
    }
    groups[k].push_back(&t);
  }
  Violation v{Violation::Kind::kFunctionality, to_string(Assertion{f}), {key.relation}, {}};
  for (const auto& [k, members] : groups) {
    if (members.size() < 2) {
      continue;
    }
    for (const Tuple* t : members) {
      if (v.witnesses.size() < Violation::kMaxWitnesses) {
        v.witnesses.push_back(*t);
      }
    }
  }
  return v;
}

std::optional<Violation> check(const Inclusion& i, const System& system,
                               const DatabaseInstance& db) {
  ComponentLocation left = system.component_of(i.lhs);
  ComponentLocation right = system.component_of(i.rhs);
  auto a = project_component(db, left.relation, left.positions);
  auto b = project_component(db, right.relation, right.positions);
  std::vector<Tuple> missing;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(missing));
  if (missing.empty()) {
    return std::nullopt;
  }
  Violation v{Violation::Kind::kInclusion, to_string(Assertion{i}), {left.relation}, {}};
  if (right.relation != left.relation) {
    v.relations.push_back(right.relation);
  }
  missing.resize(std::min(missing.size(), Violation::kMaxWitnesses));
  v.witnesses = std::move(missing);
  return v;
}

ConsistencyReport run(const System& system, const DatabaseInstance& db, bool inclusions) {
  ConsistencyReport report;
  for (const auto& a : system.kb.assertions()) {
    auto v = std::visit(Overloaded{
                            [&](const Inclusion& i) -> std::optional<Violation> {
                              return inclusions ? check(i, system, db) : std::nullopt;
                            },
                            [&](const auto& other) { return check(other, system, db); },
                        },
                        a);
    if (v) {
      report.violations.push_back(std::move(*v));
    }
  }
  return report;
}

}  // namespace

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kDisjointness: return "disjointness";
    case Violation::Kind::kFunctionality: return "functionality";
    case Violation::Kind::kInclusion: return "inclusion";
  }
  return "unknown";
}

ConsistencyReport df_consistent(const System& system, const DatabaseInstance& d) {
  return run(system, d, false);
}

ConsistencyReport full_consistency(const System& system, const DatabaseInstance& d) {
  return run(system, d, true);
}

std::string render_text(const ConsistencyReport& report) {
  std::ostringstream out;
  if (report.consistent()) {
    out << "consistent\n";
    return out.str();
  }
  for (const auto& v : report.violations) {
    out << to_string(v.kind) << " violation: " << v.assertion << '\n';
    out << "  relations:";
    for (const auto& r : v.relations) {
      out << ' ' << r;
    }
    out << '\n';
    for (const auto& w : v.witnesses) {
      out << "  witness " << to_string(w) << '\n';
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Value& v) {
  return std::visit(Overloaded{
                        [](const std::string& s) { return nlohmann::json(s); },
                        [](std::int64_t i) { return nlohmann::json(i); },
                        [](const LabeledNull& n) { return nlohmann::json(to_literal(n)); },
                    },
                    v);
}

nlohmann::json to_json(const ConsistencyReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : v.witnesses) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& value : w) {
        row.push_back(to_json(value));
      }
      witnesses.push_back(std::move(row));
    }
    violations.push_back({{"kind", to_string(v.kind)},
                          {"assertion", v.assertion},
                          {"relations", v.relations},
                          {"witnesses", std::move(witnesses)}});
  }
  return {{"consistent", report.consistent()}, {"violations", std::move(violations)}};
}

}  // namespace dlrdb
