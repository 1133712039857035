#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cacsa/constraint.hpp"

namespace cacsa {

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exhaustive enumeration of candidate solutions: every variable of the
/// problem goes to `oo` or to s^k(gamma_j) with k <= exp_budget, over one
/// fresh base per variable.
class BruteForce {
 public:
  /// Candidate value of one variable: `base < 0` is `oo`.
  struct Value {
    int base;
    int exp;
  };

  /// With `canonical_bases`, bases are numbered in order of first use, which
  /// keeps one representative per renaming of the fresh bases.
  BruteForce(const ConstraintProblem& c, std::size_t var_budget, int exp_budget, bool canonical_bases = false);

  const std::vector<SizeVar>& vars() const { return vars_; }
  const std::vector<SizeVar>& bases() const { return bases_; }

  /// Calls `f` on every satisfying assignment (indexed like vars()).
  void for_each_solution(const std::function<void(const std::vector<Value>&)>& f) const;
  bool satisfied(const std::vector<Value>& assignment) const;
  SizeSubst to_subst(const std::vector<Value>& assignment) const;

 private:
  struct Atom {
    int lhs_var, lhs_shift, rhs_var, rhs_shift;  // var < 0 is oo
    bool equality;
  };
  static bool holds(const Atom& a, const std::vector<Value>& v);
  bool bottom_ = false;
  int exp_budget_;
  bool canonical_;
  std::vector<SizeVar> vars_;
  std::vector<SizeVar> bases_;
  std::vector<Atom> atoms_;
};

/// Every satisfying candidate, as substitutions on the problem's variables.
std::vector<SizeSubst> brute_force_solve(const ConstraintProblem& c, std::size_t var_budget, int exp_budget,
                                         bool canonical_bases = false);

}  // namespace cacsa
