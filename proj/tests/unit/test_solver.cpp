#include <gtest/gtest.h>

#include <random>

#include "../oracles/difference.hpp"
#include "../support/generators.hpp"
#include "../support/text.hpp"
#include "cacsa/brute_force.hpp"
#include "cacsa/solver.hpp"

using namespace cacsa;
using cacsa::testing::problem;
using cacsa::testing::subst;
using cacsa::testing::sz;

namespace {

std::set<Inequation> ineqs(const std::string& text) { return problem(text).inequations(); }

SizeVar V(const char* n) { return SizeVar(n); }

}  // namespace

TEST(Equalities, PeelThenEliminate) {
  EqualityState st = simplify_equalities(EqualityState::from(problem("s a = s b")));
  ASSERT_FALSE(st.bottom);
  EXPECT_TRUE(st.pending.empty());
  EXPECT_TRUE(st.solved == subst("a := b") || st.solved == subst("b := a")) << to_string(st.solved);
  EXPECT_TRUE(st.ineqs.empty());
}

TEST(Equalities, Failures) {
  EXPECT_TRUE(simplify_equalities(EqualityState::from(problem("a = s a"))).bottom);
  EXPECT_TRUE(simplify_equalities(EqualityState::from(problem("oo = s a"))).bottom);
  EXPECT_TRUE(simplify_equalities(EqualityState::from(problem("s s a = b; b = s a"))).bottom);
}

TEST(Equalities, EliminationRewritesInequations) {
  EqualityState st = simplify_equalities(EqualityState::from(problem("a = s b; b <= a")));
  ASSERT_FALSE(st.bottom);
  EXPECT_EQ(st.solved, subst("a := s b"));
  EXPECT_EQ(st.ineqs, ineqs("b <= s b"));
}

TEST(Equalities, SolvedFormInvariant) {
  std::mt19937 rng(31);
  cacsa::testing::ProblemShape shape{4, 5, 2, 0.7, 0.1};
  for (int round = 0; round < 500; ++round) {
    EqualityState st = simplify_equalities(EqualityState::from(cacsa::testing::random_problem(rng, shape)));
    if (st.bottom) continue;
    EXPECT_TRUE(st.pending.empty());
    for (const auto& v : st.solved.domain()) {
      EXPECT_FALSE(st.solved.range_vars().count(v));
      for (const auto& e : st.ineqs) {
        EXPECT_FALSE(!e.lhs.is_infinite() && e.lhs.base() == v);
        EXPECT_FALSE(!e.rhs.is_infinite() && e.rhs.base() == v);
      }
    }
  }
}

TEST(Cycles, Examples) {
  DependencyGraph g1({V("a"), V("b")}, {{V("a"), V("b"), 1, {}}, {V("b"), V("a"), 0, {}}});
  auto c1 = find_increasing_cycle(g1);
  ASSERT_TRUE(c1);
  EXPECT_EQ(c1->size(), 2u);
  DependencyGraph g2({V("a"), V("b")}, {{V("a"), V("b"), 1, {}}, {V("b"), V("a"), -1, {}}});
  EXPECT_FALSE(find_increasing_cycle(g2));
  EXPECT_FALSE(find_increasing_cycle(DependencyGraph()));
}

TEST(Cycles, EdgesFollowInequations) {
  DependencyGraph g(ineqs("s s a <= b; b <= s c; oo <= c"));
  ASSERT_EQ(g.edges().size(), 2u);
  for (const auto& e : g.edges()) {
    if (e.from == V("a")) {
      EXPECT_EQ(e.to, V("b"));
      EXPECT_EQ(e.weight, 2);
    } else {
      EXPECT_EQ(e.from, V("b"));
      EXPECT_EQ(e.weight, -1);
    }
  }
}

// Detection against enumeration of simple cycles, and the returned cycle
// must be a real simple cycle of positive cost.
TEST(Cycles, AgreesWithSimpleCycleEnumeration) {
  std::mt19937 rng(37);
  for (int round = 0; round < 3000; ++round) {
    std::size_t n = 1 + rng() % 6;
    std::size_t m = rng() % 10;
    auto pool = cacsa::testing::var_pool(n);
    std::vector<DependencyEdge> edges;
    std::vector<std::tuple<std::size_t, std::size_t, long>> raw;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t a = rng() % n, b = rng() % n;
      long w = long(rng() % 5) - 2;
      edges.push_back({pool[a], pool[b], w, {}});
      raw.emplace_back(a, b, w);
    }
    DependencyGraph g(pool, edges);
    auto cyc = find_increasing_cycle(g);
    EXPECT_EQ(cyc.has_value(), oracle::has_positive_simple_cycle(n, raw));
    if (!cyc) continue;
    long cost = 0;
    std::set<SizeVar> seen;
    for (std::size_t k = 0; k < cyc->size(); ++k) {
      const auto& e = g.edges()[(*cyc)[k]];
      const auto& next = g.edges()[(*cyc)[(k + 1) % cyc->size()]];
      EXPECT_EQ(e.to, next.from);
      EXPECT_TRUE(seen.insert(e.from).second);
      cost += e.weight;
    }
    EXPECT_GT(cost, 0);
  }
}

TEST(Inequalities, Examples) {
  ReducedForm r1 = simplify_inequalities(ineqs("a <= oo"));
  EXPECT_TRUE(r1.infinite.empty());
  EXPECT_TRUE(r1.linear.empty());
  ReducedForm r2 = simplify_inequalities(ineqs("s a <= b; b <= a"));
  EXPECT_EQ(r2.infinite, (std::set<SizeVar>{V("a"), V("b")}));
  EXPECT_TRUE(r2.linear.empty());
  ReducedForm r3 = simplify_inequalities(ineqs("oo <= a; a <= b"));
  EXPECT_EQ(r3.infinite, (std::set<SizeVar>{V("a"), V("b")}));
  EXPECT_TRUE(r3.linear.empty());
  ReducedForm r4 = simplify_inequalities(ineqs("s a <= b"));
  EXPECT_TRUE(r4.infinite.empty());
  EXPECT_EQ(r4.linear, ineqs("s a <= b"));
}

// The fast reduction must reach the same reduced form as stepping the
// rules one at a time.
TEST(Inequalities, FastReductionMatchesRuleByRule) {
  std::mt19937 rng(41);
  cacsa::testing::ProblemShape shape{5, 6, 2, 0.0, 0.1};
  for (int round = 0; round < 1000; ++round) {
    std::set<Inequation> c = cacsa::testing::random_problem(rng, shape).inequations();
    std::set<Inequation> cur = c;
    while (auto st = inequality_step(cur)) cur = st->next;
    ReducedForm fast = simplify_inequalities(c);
    EXPECT_EQ(fast.as_set(), cur);
    for (const auto& v : fast.infinite)
      for (const auto& e : fast.linear) {
        EXPECT_NE(e.lhs.base(), v);
        EXPECT_NE(e.rhs.base(), v);
      }
    EXPECT_FALSE(find_increasing_cycle(DependencyGraph(fast.linear)));
  }
}

TEST(LinearSolution, Examples) {
  FreshSizeVars fresh({V("a"), V("b")});
  SizeSubst phi = minimal_linear_solution(ineqs("s a <= b"), fresh);
  SizeExpr a = phi.image(V("a"));
  ASSERT_FALSE(a.is_infinite());
  EXPECT_TRUE(a.base().is_reserved());
  EXPECT_EQ(a.shift(), 0u);
  EXPECT_EQ(phi.image(V("b")), a.succ());

  FreshSizeVars fresh2({V("a"), V("b")});
  SizeSubst psi = minimal_linear_solution(ineqs("a <= b; b <= a"), fresh2);
  EXPECT_EQ(psi.image(V("a")), psi.image(V("b")));
  EXPECT_EQ(psi.image(V("a")).shift(), 0u);

  FreshSizeVars fresh3;
  EXPECT_EQ(minimal_linear_solution({}, fresh3), SizeSubst());
}

// Least exponent vector against enumeration, one fresh base per component,
// and reading the exponents back from the solution gives the vector.
TEST(LinearSolution, LeastVectorAndComponents) {
  std::mt19937 rng(43);
  int checked = 0;
  for (int round = 0; round < 1500; ++round) {
    ReducedForm r = simplify_inequalities(cacsa::testing::random_linear(rng, 4, 1 + rng() % 4, 2));
    if (r.linear.empty()) continue;
    LinearSolution lin = minimal_linear_vector(r.linear);
    auto least = oracle::least_exponents(r.linear, 6);
    ASSERT_TRUE(least);
    FreshSizeVars fresh(r.as_set().empty() ? std::set<SizeVar>{} : ConstraintProblem().vars());
    SizeSubst phi = minimal_linear_solution(r.linear, fresh);
    for (std::size_t i = 0; i < lin.vars.size(); ++i) {
      EXPECT_EQ(lin.z[i], least->at(lin.vars[i]));
      SizeExpr img = phi.image(lin.vars[i]);
      ASSERT_FALSE(img.is_infinite());
      EXPECT_EQ(std::int64_t(img.shift()), lin.z[i]);
      for (std::size_t j = 0; j < lin.vars.size(); ++j)
        EXPECT_EQ(lin.component[i] == lin.component[j], img.base() == phi.image(lin.vars[j]).base());
    }
    for (const auto& e : r.linear) EXPECT_TRUE(satisfies(phi, e));
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Solve, Examples) {
  EXPECT_FALSE(solve(problem("oo = s a")));

  auto phi = solve(problem("a <= X"));
  ASSERT_TRUE(phi);
  EXPECT_EQ(phi->image(V("a")), phi->image(V("X")));
  EXPECT_TRUE(phi->image(V("a")).base().is_reserved());

  auto psi = solve(problem("a = b; s a <= d"));
  ASSERT_TRUE(psi);
  SizeExpr g = psi->image(V("a"));
  ASSERT_FALSE(g.is_infinite());
  EXPECT_EQ(g.shift(), 0u);
  EXPECT_EQ(psi->image(V("b")), g);
  EXPECT_EQ(psi->image(V("d")), g.succ());
}

TEST(Solve, TopAndBottom) {
  EXPECT_EQ(solve(ConstraintProblem::top()), SizeSubst());
  EXPECT_FALSE(solve(ConstraintProblem::bottom()));
}

TEST(Solve, InequalitiesAloneAreSatisfiable) {
  std::mt19937 rng(47);
  cacsa::testing::ProblemShape shape{4, 6, 2, 0.0, 0.15};
  for (int round = 0; round < 1000; ++round) {
    ConstraintProblem c = cacsa::testing::random_problem(rng, shape);
    auto phi = solve(c);
    ASSERT_TRUE(phi) << to_string(c);
    EXPECT_TRUE(satisfies(*phi, c));
  }
}

TEST(Solve, SatisfiabilityDependsOnlyOnEqualities) {
  std::mt19937 rng(53);
  cacsa::testing::ProblemShape shape{4, 6, 2, 0.5, 0.15};
  for (int round = 0; round < 1000; ++round) {
    ConstraintProblem c = cacsa::testing::random_problem(rng, shape);
    ConstraintProblem eqs;
    for (const auto& e : c.equations()) eqs.add_equal(e.lhs, e.rhs);
    EXPECT_EQ(solve(c).has_value(), solve(eqs).has_value()) << to_string(c);
  }
}

// Sampled problems with up to 4 variables, 6 atoms and successor depth 2:
// the mgs satisfies the problem, and it is more general than every
// enumerated solution (exponents up to 6) that sends to oo only variables
// the mgs sends there too.
TEST(Solve, MostGeneralAmongSolutionsWithTheSameInfinitePart) {
  std::mt19937 rng(59);
  int sat = 0, compared = 0;
  for (int round = 0; round < 60; ++round) {
    cacsa::testing::ProblemShape shape{1 + rng() % 4, 1 + rng() % 6, 2, 0.3, 0.1};
    ConstraintProblem c = cacsa::testing::random_problem(rng, shape);
    auto mgs = solve(c);
    auto all = brute_force_solve(c, 4, 6, true);
    if (!mgs) {
      // Only solutions sending a variable of an equation to oo can be lost.
      std::set<SizeVar> eq_vars;
      for (const auto& e : c.equations())
        for (const auto& side : {e.lhs, e.rhs})
          if (!side.is_infinite()) eq_vars.insert(side.base());
      for (const auto& phi : all) {
        bool infinite_eq_var = false;
        for (const auto& v : eq_vars) infinite_eq_var = infinite_eq_var || phi.image(v).is_infinite();
        ASSERT_TRUE(infinite_eq_var) << to_string(c) << " lost " << to_string(phi);
      }
      continue;
    }
    ASSERT_FALSE(all.empty()) << to_string(c);
    ++sat;
    EXPECT_TRUE(satisfies(*mgs, c));
    for (const auto& phi : all) {
      bool extra_infinity = false;
      for (const auto& v : c.vars())
        if (phi.image(v).is_infinite() && !mgs->image(v).is_infinite()) extra_infinity = true;
      if (extra_infinity) continue;
      ++compared;
      ASSERT_TRUE(more_general(*mgs, phi)) << to_string(c) << " with " << to_string(phi);
    }
  }
  EXPECT_GT(sat, 20);
  EXPECT_GT(compared, 1000);
}

// The occurs check rejects b = s s b although b := oo satisfies it, since
// s s oo is oo.
TEST(Solve, OccursCheckIgnoresInfinity) {
  ConstraintProblem c = problem("b = s s b");
  EXPECT_FALSE(solve(c));
  EXPECT_TRUE(satisfies(subst("b := oo"), c));
  EXPECT_FALSE(solve(problem("oo = s a")));
  EXPECT_TRUE(satisfies(subst("a := oo"), problem("oo = s a")));
}

// Sending c to oo frees a and b from sharing a base, and no solution is
// more general than both kinds of solution at once.
TEST(Solve, InfinityCanDisconnectAComponent) {
  ConstraintProblem c = problem("s s a <= s c; s b <= c");
  auto mgs = solve(c);
  ASSERT_TRUE(mgs);
  SizeSubst split = subst("a := x, b := y, c := oo");
  ASSERT_TRUE(satisfies(split, c));
  EXPECT_FALSE(more_general(*mgs, split));
  auto all = brute_force_solve(c, 3, 4, true);
  for (const auto& mu : all) {
    bool below_all = true;
    for (const auto& phi : all) below_all = below_all && more_general(mu, phi);
    EXPECT_FALSE(below_all) << to_string(mu);
  }
}

TEST(Solve, TraceStagesAgree) {
  FreshSizeVars fresh;
  SolveTrace tr = solve_traced(problem("a = s b; s b <= c; oo <= d; d <= e"), fresh);
  ASSERT_TRUE(tr.reduced);
  ASSERT_TRUE(tr.mgs);
  EXPECT_EQ(tr.after_equalities.solved, subst("a := s b"));
  EXPECT_EQ(tr.reduced->infinite, (std::set<SizeVar>{V("d"), V("e")}));
  EXPECT_EQ(tr.mgs->image(V("e")), SizeExpr::infinity());
}

TEST(BruteForce, Examples) {
  auto inf = brute_force_solve(problem("oo <= a"), 1, 2);
  ASSERT_EQ(inf.size(), 1u);
  EXPECT_EQ(inf[0], subst("a := oo"));
  EXPECT_EQ(brute_force_solve(problem("a <= a"), 1, 1).size(), 3u);
  EXPECT_TRUE(brute_force_solve(ConstraintProblem::bottom(), 3, 3).empty());
  EXPECT_THROW(brute_force_solve(problem("a <= b; c <= d"), 3, 1), BudgetExceeded);
}
