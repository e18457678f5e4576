#include <gtest/gtest.h>

#include <algorithm>

#include "dlrdb/kb.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dlrdb;

namespace {

BasicConcept A(const std::string& n) { return BasicConcept::atomic(n); }
BasicConcept E(const std::string& r, std::size_t i) { return BasicConcept::projection(r, i); }

std::set<Disjointness> disjointness_set(const KnowledgeBase& kb) {
  auto d = kb.disjointnesses();
  return {d.begin(), d.end()};
}

KnowledgeBase abc_kb(const std::string& assertions) {
  return parse_kb("concept A\nconcept B\nconcept C\nconcept D\n" + assertions);
}

}  // namespace

TEST(ParseKb, AttendsInclusion) {
  auto kb = parse_kb("concept Student\nrelationship Attends arity 2\nexists[1] Attends isa Student");
  EXPECT_EQ(kb.concepts().size(), 1u);
  EXPECT_EQ(kb.relationships().size(), 1u);
  ASSERT_EQ(kb.assertions().size(), 1u);
  EXPECT_EQ(kb.inclusions().front(), (Inclusion{E("Attends", 1), A("Student")}));
}

TEST(ParseKb, EmptyText) {
  auto kb = parse_kb("");
  EXPECT_TRUE(kb.concepts().empty());
  EXPECT_TRUE(kb.relationships().empty());
  EXPECT_TRUE(kb.assertions().empty());
}

TEST(ParseKb, PositionOutOfRange) {
  try {
    parse_kb("relationship Attends arity 2\nfunct [3] Attends");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseKb, RejectsUndeclaredNamesAndBadSyntax) {
  EXPECT_THROW(parse_kb("concept A\nA isa B"), ParseError);
  EXPECT_THROW(parse_kb("concept A\nA isa"), ParseError);
  EXPECT_THROW(parse_kb("concept A\nconcept A"), ParseError);
  EXPECT_THROW(parse_kb("concept A\nrelationship A arity 2"), ParseError);
  EXPECT_THROW(parse_kb("relationship R arity 0"), ParseError);
  EXPECT_THROW(parse_kb("concept A\nexists[0] A isa A"), ParseError);
  EXPECT_THROW(parse_kb("concept A\nA subsumes A"), ParseError);
}

TEST(ParseKb, ErrorLocation) {
  try {
    parse_kb("concept A\n\n  A isa Nope\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(ParseKb, CommentsAndForwardReferences) {
  auto kb = parse_kb("# header\nA isa B  # trailing\nconcept A\nconcept B\n");
  EXPECT_EQ(kb.inclusions().size(), 1u);
}

TEST(ParseKb, DuplicatesAreDropped) {
  auto kb = abc_kb("A isa B\nA isa B\n");
  EXPECT_EQ(kb.assertions().size(), 1u);
}

TEST(PrintKb, RoundTrip) {
  auto kb = test::university_system().kb;
  auto again = parse_kb(print_kb(kb));
  EXPECT_EQ(again.assertions(), kb.assertions());
  EXPECT_EQ(again.concepts(), kb.concepts());
  EXPECT_EQ(again.relationships(), kb.relationships());
}

TEST(Normalize, OneStep) {
  auto kb = normalize(abc_kb("A isa B\nB disj C\n"));
  EXPECT_TRUE(disjointness_set(kb).contains(Disjointness{A("A"), A("C")}));
  EXPECT_EQ(kb.disjointnesses().size(), 2u);
}

TEST(Normalize, SymmetricPremise) {
  auto kb = normalize(abc_kb("A isa B\nC disj B\n"));
  EXPECT_TRUE(disjointness_set(kb).contains(Disjointness{A("A"), A("C")}));
}

TEST(Normalize, NoDisjointnessMeansNoChange) {
  auto kb = test::university_system().kb;
  auto n = normalize(kb);
  EXPECT_EQ(n.assertions(), kb.assertions());
  EXPECT_TRUE(n.normalized());
  EXPECT_FALSE(kb.normalized());
}

TEST(Normalize, Chain) {
  // D isa A isa B, B disj C
  auto kb = normalize(abc_kb("D isa A\nA isa B\nB disj C\n"));
  auto d = disjointness_set(kb);
  EXPECT_TRUE(d.contains(Disjointness{A("A"), A("C")}));
  EXPECT_TRUE(d.contains(Disjointness{A("D"), A("C")}));
  EXPECT_EQ(d.size(), 3u);
}

TEST(Normalize, DerivedAppendedInTextualOrder) {
  auto kb = normalize(abc_kb("D isa B\nA isa B\nB disj C\n"));
  const auto& as = kb.assertions();
  ASSERT_EQ(as.size(), 5u);
  EXPECT_EQ(to_string(as[3]), "A disj C");
  EXPECT_EQ(to_string(as[4]), "D disj C");
}

TEST(InclusionClosure, TransitiveAndReflexive) {
  auto kb = abc_kb("A isa B\nB isa C\n");
  auto c = inclusion_closure(kb);
  EXPECT_TRUE(c.contains({A("A"), A("C")}));
  for (const auto& b : occurring_concepts(kb)) {
    EXPECT_TRUE(c.contains({b, b}));
  }
  EXPECT_FALSE(c.contains({A("C"), A("A")}));
}

TEST(InclusionClosure, UniversityStudentAttends) {
  auto c = inclusion_closure(test::university_system().kb);
  EXPECT_TRUE(c.contains({A("Student"), E("Attends", 1)}));
}

TEST(EmptyConcepts, Examples) {
  EXPECT_EQ(empty_concepts(normalize(abc_kb("A disj A\n"))), std::set<BasicConcept>{A("A")});
  EXPECT_TRUE(empty_concepts(normalize(test::university_system().kb)).empty());
  EXPECT_EQ(empty_concepts(normalize(abc_kb("A isa B\nA isa C\nB disj C\n"))),
            std::set<BasicConcept>{A("A")});
}

TEST(KbProperties, NormalizeAgainstOracle) {
  gen::Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    auto kb = gen::random_kb(rng);
    auto n = normalize(kb);
    EXPECT_EQ(disjointness_set(n), oracle::naive_disjointness_closure(kb));
    // idempotent, and only disjointness is added
    EXPECT_EQ(normalize(n).assertions(), n.assertions());
    EXPECT_EQ(n.inclusions(), kb.inclusions());
    EXPECT_EQ(n.functionalities(), kb.functionalities());
    EXPECT_TRUE(std::equal(kb.assertions().begin(), kb.assertions().end(), n.assertions().begin()));
  }
}

TEST(KbProperties, DerivedDisjointnessHasDerivation) {
  gen::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    auto kb = gen::random_kb(rng);
    auto n = normalize(kb);
    // Replay: each derived assertion must follow in one rule step from
    // assertions that precede it in the normalized list or in the input.
    std::set<Disjointness> known = disjointness_set(kb);
    auto derived = n.disjointnesses();
    derived.erase(std::remove_if(derived.begin(), derived.end(),
                                 [&](const Disjointness& d) { return known.contains(d); }),
                  derived.end());
    bool progress = true;
    while (progress && !derived.empty()) {
      progress = false;
      for (auto it = derived.begin(); it != derived.end();) {
        bool justified = false;
        for (const auto& inc : kb.inclusions()) {
          if (inc.lhs == it->lhs && (known.contains({inc.rhs, it->rhs}) ||
                                     known.contains({it->rhs, inc.rhs}))) {
            justified = true;
          }
        }
        if (justified) {
          known.insert(*it);
          it = derived.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
    }
    EXPECT_TRUE(derived.empty()) << print_kb(kb);
  }
}

TEST(KbProperties, InclusionClosureAgainstOracle) {
  gen::Rng rng(13);
  for (int i = 0; i < 150; ++i) {
    auto kb = gen::random_kb(rng, {10, 3, 3, 20});
    EXPECT_EQ(inclusion_closure(kb), oracle::naive_inclusion_closure(kb, occurring_concepts(kb)));
  }
}

TEST(KbProperties, EmptyConceptsMatchDefinition) {
  gen::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    auto kb = normalize(gen::random_kb(rng));
    auto closure = inclusion_closure(kb);
    auto disj = disjointness_set(kb);
    std::set<BasicConcept> expected;
    for (const auto& [b, c1] : closure) {
      for (const auto& [b2, c2] : closure) {
        if (b == b2 && disj.contains({c1, c2})) {
          expected.insert(b);
        }
      }
    }
    EXPECT_EQ(empty_concepts(kb), expected);
  }
}
