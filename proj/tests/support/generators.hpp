#pragma once

#include <random>
#include <string>
#include <vector>

#include "cacsa/constraint.hpp"
#include "cacsa/size.hpp"
#include "cacsa/term.hpp"

namespace cacsa::testing {

inline std::vector<SizeVar> var_pool(std::size_t n) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<SizeVar> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(i < 8 ? names[i] : "v" + std::to_string(i));
  return out;
}

struct ProblemShape {
  std::size_t vars = 3;
  std::size_t atoms = 4;
  std::uint32_t max_shift = 2;
  double equation_ratio = 0.4;
  double infinity_ratio = 0.1;
};

inline SizeExpr random_size(std::mt19937& rng, const std::vector<SizeVar>& vars, const ProblemShape& shape) {
  std::uniform_real_distribution<double> u(0, 1);
  if (u(rng) < shape.infinity_ratio) return SizeExpr::infinity();
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::uniform_int_distribution<std::uint32_t> shift(0, shape.max_shift);
  return SizeExpr::var(vars[pick(rng)], shift(rng));
}

inline ConstraintProblem random_problem(std::mt19937& rng, const ProblemShape& shape) {
  auto vars = var_pool(shape.vars);
  std::uniform_real_distribution<double> u(0, 1);
  ConstraintProblem c;
  for (std::size_t i = 0; i < shape.atoms; ++i) {
    SizeExpr a = random_size(rng, vars, shape);
    SizeExpr b = random_size(rng, vars, shape);
    if (u(rng) < shape.equation_ratio)
      c.add_equal(a, b);
    else
      c.add_leq(a, b);
  }
  return c;
}

/// Linear inequations s^p x <= s^q y over `vars` variables.
inline std::set<Inequation> random_linear(std::mt19937& rng, std::size_t vars, std::size_t atoms, std::uint32_t max_shift) {
  auto pool = var_pool(vars);
  std::uniform_int_distribution<std::size_t> pick(0, vars - 1);
  std::uniform_int_distribution<std::uint32_t> shift(0, max_shift);
  std::set<Inequation> out;
  while (out.size() < atoms) out.insert({SizeExpr::var(pool[pick(rng)], shift(rng)), SizeExpr::var(pool[pick(rng)], shift(rng))});
  return out;
}

/// Each variable goes to `oo` or to s^k of one of `bases`.
inline SizeSubst random_subst(std::mt19937& rng, const std::set<SizeVar>& vars, const std::vector<SizeVar>& bases,
                              std::uint32_t max_exp, double infinity_ratio = 0.2) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
  std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
  SizeSubst phi;
  for (const auto& v : vars) {
    if (u(rng) < infinity_ratio)
      phi.bind(v, SizeExpr::infinity());
    else
      phi.bind(v, SizeExpr::var(bases[pick(rng)], exp(rng)));
  }
  return phi;
}

}  // namespace cacsa::testing
