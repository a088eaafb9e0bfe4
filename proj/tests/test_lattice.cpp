#include <gtest/gtest.h>

#include "json.hpp"
#include "lattice_golden.hpp"
#include "navq/lattice.hpp"

using namespace navq;

namespace {

const Semantics kSems[] = {Semantics::kPath, Semantics::kBoolean};
const ChainOrTree kClasses[] = {ChainOrTree::kLabeledChain, ChainOrTree::kUnlabeledChain, ChainOrTree::kLabeledTree,
                                ChainOrTree::kUnlabeledTree};

}  // namespace

TEST(Lattice, GoldenTable) {
  for (Semantics sem : kSems)
    for (ChainOrTree cls : kClasses) {
      for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b) {
          LatticeQuery q{golden::fragment_of(a), golden::fragment_of(b), sem, cls};
          ASSERT_EQ(subsumes(q), golden::golden_subsumes(sem, cls, a, b))
              << lattice_class_name(cls) << " " << (sem == Semantics::kPath ? "path" : "boolean") << " "
              << q.f1.to_string() << " vs " << q.f2.to_string();
        }
    }
}

TEST(Lattice, Examples) {
  EXPECT_TRUE(subsumes({Fragment{Op::kPi1, Op::kPi2}, {}, Semantics::kBoolean, ChainOrTree::kLabeledChain}));
  EXPECT_FALSE(subsumes({Fragment{Op::kCopi1, Op::kCopi2}, Fragment{Op::kTc, Op::kPi1, Op::kPi2, Op::kCap},
                         Semantics::kBoolean, ChainOrTree::kUnlabeledTree}));
  EXPECT_FALSE(subsumes({Fragment{Op::kPi1, Op::kPi2}, {}, Semantics::kPath, ChainOrTree::kLabeledChain}));
}

TEST(Lattice, Reflexive) {
  for (Semantics sem : kSems)
    for (ChainOrTree cls : kClasses)
      for (int a = 0; a < 32; ++a) {
        Fragment f = golden::fragment_of(a);
        EXPECT_TRUE(subsumes({f, f, sem, cls}));
      }
}

TEST(Lattice, BaseInclusionGivesPathSubsumption) {
  for (int a = 0; a < 32; ++a)
    for (int b = 0; b < 32; ++b) {
      Fragment f1 = golden::fragment_of(a), f2 = golden::fragment_of(b);
      if (!f1.subset_of(base_closure(f2))) continue;
      for (ChainOrTree cls : kClasses)
        for (Semantics sem : kSems) EXPECT_TRUE(subsumes({f1, f2, sem, cls}));
    }
}

TEST(Lattice, UnlabeledExtras) {
  Fragment hom{Op::kConv, Op::kTc, Op::kPi1, Op::kPi2, Op::kCap};
  EXPECT_TRUE(subsumes({hom, {}, Semantics::kBoolean, ChainOrTree::kUnlabeledTree}));
  EXPECT_TRUE(subsumes({Fragment{Op::kDi}, {}, Semantics::kBoolean, ChainOrTree::kUnlabeledChain}));
  EXPECT_THROW(subsumes({Fragment{Op::kDi}, {}, Semantics::kBoolean, ChainOrTree::kUnlabeledTree}), NotEncoded);
  EXPECT_THROW(subsumes({Fragment{Op::kDi}, {}, Semantics::kBoolean, ChainOrTree::kLabeledTree}), NotEncoded);
  EXPECT_THROW(subsumes({Fragment{Op::kDi, Op::kMinus}, {}, Semantics::kBoolean, ChainOrTree::kUnlabeledChain}),
               NotEncoded);
}

TEST(Lattice, SingleSidedProjectionNotEncoded) {
  EXPECT_THROW(subsumes({Fragment{Op::kPi1}, {}, Semantics::kBoolean, ChainOrTree::kLabeledTree}), NotEncoded);
  EXPECT_THROW(locate(diagram_for(Semantics::kPath, ChainOrTree::kLabeledTree), Fragment{Op::kCopi2}), NotEncoded);
}

TEST(Lattice, CarryOverAgreesWithTable) {
  for (Semantics sem : kSems)
    for (ChainOrTree cls : kClasses)
      for (int a = 0; a < 32; a += 3)
        for (int b = 0; b < 32; b += 5) {
          Claim c{false, golden::fragment_of(a), golden::fragment_of(b), sem, cls};
          c.subsumption = subsumes({c.f1, c.f2, sem, cls});
          for (const Claim& d : carry_over(c)) {
            EXPECT_FALSE(d == c);
            EXPECT_EQ(subsumes({d.f1, d.f2, d.semantics, d.cls}), d.subsumption);
          }
        }
}

TEST(Lattice, ClassOrder) {
  EXPECT_TRUE(is_subclass(ChainOrTree::kUnlabeledChain, ChainOrTree::kLabeledTree));
  EXPECT_TRUE(is_subclass(ChainOrTree::kLabeledChain, ChainOrTree::kLabeledTree));
  EXPECT_TRUE(is_subclass(ChainOrTree::kUnlabeledChain, ChainOrTree::kUnlabeledTree));
  EXPECT_FALSE(is_subclass(ChainOrTree::kLabeledChain, ChainOrTree::kUnlabeledTree));
  EXPECT_FALSE(is_subclass(ChainOrTree::kLabeledTree, ChainOrTree::kLabeledChain));
}

TEST(Witness, ChecksPass) {
  for (const Witness& w : all_witnesses()) {
    std::string why;
    EXPECT_TRUE(w.check(&why)) << w.expr << ": " << why;
  }
}

TEST(Witness, Selection) {
  Fragment pi{Op::kPi1, Op::kPi2}, copi{Op::kCopi1, Op::kCopi2}, tc{Op::kTc};
  auto w = separation_witness({copi, tc | pi | Fragment{Op::kCap}, Semantics::kBoolean, ChainOrTree::kUnlabeledTree});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->expr, "copi2(E).E.copi1(E)");
  w = separation_witness({pi, {}, Semantics::kPath, ChainOrTree::kLabeledChain});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->expr, "pi1(E)");
  w = separation_witness({pi, {}, Semantics::kBoolean, ChainOrTree::kLabeledTree});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->expr, "pi1(l1).pi1(l2)");
  w = separation_witness({tc, {}, Semantics::kBoolean, ChainOrTree::kLabeledChain});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->expr, "l1.(l2.l2)+.l1");
  w = separation_witness({tc, {}, Semantics::kPath, ChainOrTree::kUnlabeledTree});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->expr, "E+");
  EXPECT_FALSE(separation_witness({{}, tc, Semantics::kPath, ChainOrTree::kLabeledTree}));
}

TEST(LatticeJson, ListsDiagrams) {
  auto j = nlohmann::json::parse(lattice_json());
  ASSERT_TRUE(j.is_object() || j.is_array());
  EXPECT_NE(lattice_json().find("copi"), std::string::npos);
  EXPECT_EQ(all_diagrams().size(), 6u);
}
