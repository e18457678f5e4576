// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "dlrdb/consistency.hpp"
#include "dlrdb/engine.hpp"
#include "dlrdb/rewriter.hpp"
#include "dlrdb/translator.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dlrdb;

namespace {

// Failure details collected by a criterion; empty means pass.
struct Outcome {
  std::vector<std::string> failures;
  std::string note;

  void fail(std::string message) {
    if (failures.size() < 5) {
      failures.push_back(std::move(message));
    }
  }
};

System normalized(System system) {
  system.kb = normalize(system.kb);
  return system;
}

Outcome course_query_translation() {
  Outcome o;
  auto system = test::university_system();
  auto rq = to_relational(parse_query(read_file(test::university() / "q1.cql")), system);
  RelationalQuery expected{
      {{"S", "SSurname"}},
      {RelationalBlock{{{"StudentTable", "S"}, {"AttendsTable", "A"}},
                       {{{"S", "SName"}, {"A", "SName"}}, {{"S", "SSurname"}, {"A", "SSurname"}}}}},
      {RelationalCondition{{"A", "CourseId"}, Value{"AB23INF"}}}};
  if (!(rq == expected)) {
    o.fail("AST differs: " + print_relational(rq));
  }
  std::string golden = read_file(test::university() / "q1.relational.txt");
  while (!golden.empty() && golden.back() == '\n') {
    golden.pop_back();
  }
  if (print_relational(rq) != golden) {
    o.fail("text differs from golden file: " + print_relational(rq));
  }
  return o;
}

Outcome normalize_correctness() {
  Outcome o;
  gen::Rng rng(1002);
  for (int i = 0; i < 200; ++i) {
    auto kb = gen::random_kb(rng);
    auto n = normalize(kb);
    auto got = n.disjointnesses();
    if (std::set<Disjointness>(got.begin(), got.end()) != oracle::naive_disjointness_closure(kb)) {
      o.fail("closure mismatch on KB " + std::to_string(i));
    }
    if (print_kb(normalize(n)) != print_kb(n)) {
      o.fail("not idempotent on KB " + std::to_string(i));
    }
  }
  return o;
}

Outcome rewriting_against_chase() {
  Outcome o;
  gen::Rng rng(1003);
  int systems = 0;
  int pairs = 0;
  int nonempty = 0;
  int inferred = 0;
  int attempts = 0;
  while (systems < 100 && attempts < 10000) {
    ++attempts;
    auto system = normalized(gen::random_system(
        rng, {.concepts = 3, .relationships = 3, .max_arity = 2, .inclusions = 7}));
    auto d = gen::random_instance(rng, system.schema, 4);
    if (!df_consistent(system, d).consistent()) {
      continue;
    }
    ++systems;
    if (!oracle::satisfies_disjointness(system, oracle::chase(system, d).database)) {
      o.fail("chase of a df-consistent instance breaks disjointness on system " +
             std::to_string(systems));
    }
    for (int j = 0; j < 10; ++j) {
      auto q = gen::random_cq(rng, system.schema, 3, 4);
      auto certain = oracle::certain_answers(q, system, d);
      if (!certain) {
        o.fail("chase did not terminate on system " + std::to_string(systems));
        continue;
      }
      ++pairs;
      auto got = eval_ucq(rewrite(q, system).ucq, d);
      nonempty += got.empty() ? 0 : 1;
      inferred += got.size() > eval_cq(q, d).size() ? 1 : 0;
      if (got != *certain) {
        o.fail("mismatch for " + to_string(q) + ": " + std::to_string(got.size()) + " vs " +
               std::to_string(certain->size()));
      }
    }
  }
  if (systems < 100) {
    o.fail("only " + std::to_string(systems) + " df-consistent instances generated");
  }
  o.note = std::to_string(systems) + " systems, " + std::to_string(pairs) + " queries, " +
           std::to_string(nonempty) + " non-empty, " + std::to_string(inferred) +
           " with inferred answers";
  return o;
}

Outcome inference_demonstration() {
  Outcome o;
  auto system = test::university_system();
  auto d = test::university_data(system);
  std::string text = read_file(test::university() / "all_students.cql");
  AnswerSet expected{Tuple{std::string("Anna"), std::string("Rossi")},
                     Tuple{std::string("Luca"), std::string("Verdi")},
                     Tuple{std::string("Maria"), std::string("Bianchi")}};
  AnswerSet direct_expected{Tuple{std::string("Anna"), std::string("Rossi")},
                            Tuple{std::string("Luca"), std::string("Verdi")}};
  auto result = answer(text, system, d);
  if (result.tuples != expected) {
    o.fail("rewritten answer differs");
  }
  if (eval_cq(conceptual_to_cq(text, system), d) != direct_expected) {
    o.fail("direct answer differs");
  }
  return o;
}

Outcome consistency_detection() {
  Outcome o;
  auto plain = normalized(test::university_system());
  auto disjoint = normalized(test::university_system("kb_disjoint.dlr"));
  if (!df_consistent(plain, test::university_data(plain)).consistent() ||
      !df_consistent(disjoint, test::university_data(disjoint)).consistent()) {
    o.fail("clean fixture reported inconsistent");
  }
  auto funct = df_consistent(plain, test::university_data(plain, "funct_violation"));
  if (funct.violations.size() != 1 || funct.violations[0].assertion != "funct [1] Teaches") {
    o.fail("functionality fault not identified");
  }
  auto disj = df_consistent(disjoint, test::university_data(disjoint, "disj_violation"));
  if (disj.violations.empty() || disj.violations[0].assertion != "Student disj Professor") {
    o.fail("disjointness fault not identified");
  }
  gen::Rng rng(1005);
  for (int i = 0; i < 100; ++i) {
    auto system = gen::random_system(rng, {.inclusions = 0, .disjointnesses = 0,
                                           .functionalities = 2});
    auto d = gen::random_instance(rng, system.schema, 6);
    std::set<std::string> flagged;
    for (const auto& v : df_consistent(system, d).violations) {
      flagged.insert(v.assertion);
    }
    for (const auto& f : system.kb.functionalities()) {
      bool violated = !oracle::functionality_offenders(system, d, f).empty();
      if (flagged.contains(to_string(Assertion{f})) != violated) {
        o.fail("pairwise oracle disagrees on instance " + std::to_string(i));
      }
    }
  }
  return o;
}

std::set<ConjunctiveQuery> member_set(const RewriteResult& r) {
  return {r.ucq.members().begin(), r.ucq.members().end()};
}

Outcome termination_and_determinism() {
  Outcome o;
  gen::Rng rng(1006);
  std::size_t max_steps = 0;
  auto university = test::university_system();
  for (int i = 0; i < 500; ++i) {
    System system;
    ConjunctiveQuery q;
    if (i % 5 == 0) {
      system = university;
      q = gen::random_cq(rng, system.schema, 3, 4);
    } else {
      system = gen::random_system(rng, {.concepts = 3, .relationships = 2, .inclusions = 8,
                                        .acyclic = false, .force_cycle = i % 2 == 0});
      q = gen::random_cq(rng, system.schema, 3, 4);
    }
    try {
      auto first = rewrite(q, system);
      max_steps = std::max(max_steps, first.steps);
      System other = system;
      other.kb = gen::shuffled(rng, system.kb);
      auto second = rewrite(q, other);
      if (member_set(first) != member_set(second)) {
        o.fail("shuffled assertions changed the rewriting of " + to_string(q));
      }
    } catch (const RewriteLimitExceeded&) {
      o.fail("step limit exceeded on " + to_string(q));
    }
  }
  o.note = "max steps " + std::to_string(max_steps);
  return o;
}

Outcome evaluator_equivalence() {
  Outcome o;
  gen::Rng rng(1007);
  for (int i = 0; i < 300; ++i) {
    auto system = gen::random_system(rng);
    auto d = gen::random_instance(rng, system.schema, 4);
    auto q = gen::random_cq(rng, system.schema, 3, 4);
    if (eval_cq(q, d) != oracle::enumerate_assignments(q, d)) {
      o.fail("mismatch for " + to_string(q));
    }
  }
  return o;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "university course query translation", 1, course_query_translation},
      {2, "normalize vs naive closure", 5, normalize_correctness},
      {3, "rewriting vs chase certain answers", 60, rewriting_against_chase},
      {4, "inference of unstated students", 1, inference_demonstration},
      {5, "consistency detection", 5, consistency_detection},
      {6, "termination and determinism", 60, termination_and_determinism},
      {7, "eval_cq vs assignment enumeration", 10, evaluator_equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      std::ostringstream msg;
      msg << "took " << seconds << " s, limit " << c.limit_seconds << " s";
      o.fail(msg.str());
    }
    bool ok = o.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.name << " ("
              << seconds << " s";
    if (!o.note.empty()) {
      std::cout << "; " << o.note;
    }
    std::cout << ")\n";
    for (const auto& f : o.failures) {
      std::cout << "  " << f << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
