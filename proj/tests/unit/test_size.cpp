#include <gtest/gtest.h>

#include <random>

#include "../oracles/more_general.hpp"
#include "../oracles/size_order.hpp"
#include "../support/generators.hpp"
#include "../support/text.hpp"
#include "cacsa/size.hpp"

using namespace cacsa;
using cacsa::testing::subst;
using cacsa::testing::sz;

TEST(Normalize, SuccessorOfInfinityIsInfinity) {
  EXPECT_EQ(normalize(SizeSyntax::infinity(1)), SizeExpr::infinity());
  EXPECT_EQ(normalize(SizeSyntax::infinity()), SizeExpr::infinity());
  SizeExpr a = normalize(SizeSyntax::var("a", 2));
  EXPECT_EQ(a.base(), SizeVar("a"));
  EXPECT_EQ(a.shift(), 2u);
}

TEST(Normalize, IdempotentAndSyntaxRoundTrip) {
  for (std::uint32_t k = 0; k <= 5; ++k) {
    for (auto syn : {SizeSyntax::infinity(k), SizeSyntax::var("a", k)}) {
      SizeExpr n = normalize(syn);
      EXPECT_EQ(normalize(to_syntax(n)), n);
    }
  }
}

TEST(SizeLeq, Examples) {
  EXPECT_TRUE(size_leq(sz("a"), sz("oo")));
  EXPECT_TRUE(size_leq(sz("a"), sz("s a")));
  EXPECT_FALSE(size_leq(sz("s a"), sz("a")));
  EXPECT_FALSE(size_leq(sz("s b"), sz("s a")));
  EXPECT_FALSE(size_leq(sz("oo"), sz("a")));
  EXPECT_TRUE(size_leq(sz("oo"), sz("oo")));
}

// Decision rule versus saturation of the ordering's derivation rules.
TEST(SizeLeq, AgreesWithDerivationClosure) {
  oracle::SizeOrderClosure closure({"a", "b"}, 5);
  for (const auto& x : closure.universe())
    for (const auto& y : closure.universe())
      EXPECT_EQ(size_leq(normalize(x), normalize(y)), closure.derivable(x, y))
          << to_string(normalize(x)) << " vs " << to_string(normalize(y));
}

// Two expressions are equivalent in the ordering iff their normal forms agree.
TEST(SizeLeq, EquivalenceIsEqualityOfNormalForms) {
  oracle::SizeOrderClosure closure({"a", "b"}, 5);
  for (const auto& x : closure.universe())
    for (const auto& y : closure.universe()) {
      bool equiv = closure.derivable(x, y) && closure.derivable(y, x);
      EXPECT_EQ(equiv, normalize(x) == normalize(y));
    }
}

TEST(SizeLeq, OrderLaws) {
  std::vector<SizeExpr> all{SizeExpr::infinity()};
  for (const char* v : {"a", "b"})
    for (std::uint32_t k = 0; k <= 5; ++k) all.push_back(SizeExpr::var(v, k));
  for (const auto& a : all) {
    EXPECT_TRUE(size_leq(a, a));
    EXPECT_TRUE(size_leq(a, a.succ()));
    if (size_leq(SizeExpr::infinity(), a)) {
      EXPECT_TRUE(a.is_infinite());
    }
    for (const auto& b : all) {
      if (size_leq(a, b)) {
        EXPECT_TRUE(size_leq(a.succ(), b.succ()));
      }
      for (const auto& c : all)
        if (size_leq(a, b) && size_leq(b, c)) {
          EXPECT_TRUE(size_leq(a, c));
        }
    }
  }
}

TEST(SizeLeq, StableBySubstitution) {
  std::mt19937 rng(7);
  std::vector<SizeExpr> all{SizeExpr::infinity()};
  for (const char* v : {"a", "b", "c"})
    for (std::uint32_t k = 0; k <= 3; ++k) all.push_back(SizeExpr::var(v, k));
  std::set<SizeVar> vs{SizeVar("a"), SizeVar("b"), SizeVar("c")};
  for (int round = 0; round < 200; ++round) {
    SizeSubst phi = cacsa::testing::random_subst(rng, vs, {SizeVar("a"), SizeVar("d")}, 3);
    for (const auto& a : all)
      for (const auto& b : all)
        if (size_leq(a, b)) {
          EXPECT_TRUE(size_leq(apply(phi, a), apply(phi, b)));
        }
  }
}

TEST(SizeSubst, Apply) {
  EXPECT_EQ(apply(subst("a := oo"), sz("s a")), SizeExpr::infinity());
  EXPECT_EQ(apply(SizeSubst(), sz("s a")), sz("s a"));
  EXPECT_EQ(apply(subst("a := s b"), sz("s a")), sz("s s b"));
}

TEST(SizeSubst, IdentityBindingsAreNotStored) {
  SizeSubst phi;
  phi.bind(SizeVar("a"), sz("a"));
  EXPECT_EQ(phi, SizeSubst());
  EXPECT_TRUE(phi.domain().empty());
}

TEST(SizeSubst, Compose) {
  SizeSubst phi = subst("a := s b");
  SizeSubst psi = subst("b := s c, d := oo");
  SizeSubst both = compose(phi, psi);
  EXPECT_EQ(both.image(SizeVar("a")), sz("s s c"));
  EXPECT_EQ(both.image(SizeVar("b")), sz("s c"));
  EXPECT_EQ(both.image(SizeVar("d")), SizeExpr::infinity());
}

TEST(SubstLeq, Examples) {
  EXPECT_TRUE(subst_leq(subst("a := a"), subst("a := s a")));
  EXPECT_FALSE(subst_leq(subst("a := oo"), subst("a := a")));
  EXPECT_TRUE(subst_leq(SizeSubst(), SizeSubst()));
}

TEST(MoreGeneral, Examples) {
  auto w = more_general_witness(subst("a := c"), subst("a := s c"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->image(SizeVar("c")), sz("s c"));
  EXPECT_FALSE(more_general(subst("a := oo"), subst("a := b")));

  auto w2 = more_general_witness(subst("a := c, b := s c"), subst("a := d, b := s s d"));
  ASSERT_TRUE(w2);
  // The least choice for c: a needs c below d, b needs it below s d.
  EXPECT_EQ(w2->image(SizeVar("c")), sz("d"));
  SizeSubst both = compose(subst("a := c, b := s c"), *w2);
  EXPECT_EQ(both.image(SizeVar("a")), sz("d"));
  EXPECT_EQ(both.image(SizeVar("b")), sz("s d"));
}

TEST(MoreGeneral, WitnessIsBelowTarget) {
  std::mt19937 rng(11);
  std::set<SizeVar> vs{SizeVar("a"), SizeVar("b"), SizeVar("c")};
  for (int round = 0; round < 2000; ++round) {
    SizeSubst phi = cacsa::testing::random_subst(rng, vs, {SizeVar("?1"), SizeVar("?2")}, 2);
    SizeSubst psi = cacsa::testing::random_subst(rng, vs, {SizeVar("?3"), SizeVar("c")}, 3);
    if (auto w = more_general_witness(phi, psi)) {
      SizeSubst both = compose(phi, *w);
      for (const auto& v : vs) EXPECT_TRUE(size_leq(both.image(v), psi.image(v)));
    }
  }
}

// Decision procedure against exhaustive witness search (exponents <= 6).
TEST(MoreGeneral, AgreesWithWitnessSearch) {
  std::mt19937 rng(5);
  std::set<SizeVar> vs{SizeVar("a"), SizeVar("b"), SizeVar("c")};
  int positives = 0;
  for (int round = 0; round < 1500; ++round) {
    std::uniform_int_distribution<int> coin(0, 2);
    std::set<SizeVar> dom;
    for (const auto& v : vs)
      if (coin(rng)) dom.insert(v);
    SizeSubst phi = cacsa::testing::random_subst(rng, dom, {SizeVar("x"), SizeVar("a")}, 2, 0.15);
    SizeSubst psi = cacsa::testing::random_subst(rng, vs, {SizeVar("y"), SizeVar("b")}, 3, 0.25);
    bool fast = more_general(phi, psi);
    bool slow = oracle::more_general_search(phi, psi, 6).has_value();
    positives += fast;
    EXPECT_EQ(fast, slow) << to_string(phi) << " vs " << to_string(psi);
  }
  EXPECT_GT(positives, 50);
}

TEST(FreshSizeVars, AvoidsReservedNames) {
  FreshSizeVars fresh({SizeVar("?1"), SizeVar("?2")});
  SizeVar v = fresh.fresh();
  EXPECT_NE(v, SizeVar("?1"));
  EXPECT_NE(v, SizeVar("?2"));
  EXPECT_TRUE(v.is_reserved());
  EXPECT_NE(fresh.fresh(), v);
}

TEST(SizePrinting, TextualSyntax) {
  EXPECT_EQ(to_string(sz("oo")), "oo");
  EXPECT_EQ(to_string(sz("s s a")), "s s a");
  EXPECT_EQ(to_string(subst("a := s b")), "{a := s b}");
}
