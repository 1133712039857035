#include "cacsa/brute_force.hpp"

#include <algorithm>
#include <map>

namespace cacsa {

BruteForce::BruteForce(const ConstraintProblem& c, std::size_t var_budget, int exp_budget, bool canonical_bases)
    : exp_budget_(exp_budget), canonical_(canonical_bases) {
  if (c.is_bottom()) {
    bottom_ = true;
    return;
  }
  std::set<SizeVar> vs = c.vars();
  if (vs.size() > var_budget)
    throw BudgetExceeded("problem has " + std::to_string(vs.size()) + " variables, budget is " +
                         std::to_string(var_budget));
  vars_.assign(vs.begin(), vs.end());
  std::map<SizeVar, int> idx;
  for (const auto& v : vars_) idx.emplace(v, int(idx.size()));

  FreshSizeVars fresh(vs);
  for (std::size_t i = 0; i < vars_.size(); ++i) bases_.push_back(fresh.fresh());

  auto side = [&](const SizeExpr& e, int& var, int& sh) {
    if (e.is_infinite()) {
      var = -1;
      sh = 0;
    } else {
      var = idx.at(e.base());
      sh = int(e.shift());
    }
  };
  for (const auto& e : c.equations()) {
    Atom a{};
    a.equality = true;
    side(e.lhs, a.lhs_var, a.lhs_shift);
    side(e.rhs, a.rhs_var, a.rhs_shift);
    atoms_.push_back(a);
  }
  for (const auto& e : c.inequations()) {
    Atom a{};
    a.equality = false;
    side(e.lhs, a.lhs_var, a.lhs_shift);
    side(e.rhs, a.rhs_var, a.rhs_shift);
    atoms_.push_back(a);
  }
}

bool BruteForce::holds(const Atom& a, const std::vector<Value>& v) {
  int lb = -1, le = 0, rb = -1, re = 0;
  if (a.lhs_var >= 0 && v[std::size_t(a.lhs_var)].base >= 0) {
    lb = v[std::size_t(a.lhs_var)].base;
    le = v[std::size_t(a.lhs_var)].exp + a.lhs_shift;
  }
  if (a.rhs_var >= 0 && v[std::size_t(a.rhs_var)].base >= 0) {
    rb = v[std::size_t(a.rhs_var)].base;
    re = v[std::size_t(a.rhs_var)].exp + a.rhs_shift;
  }
  if (a.equality) return lb == rb && (lb < 0 || le == re);
  if (rb < 0) return true;
  return lb >= 0 && lb == rb && le <= re;
}

bool BruteForce::satisfied(const std::vector<Value>& v) const {
  if (bottom_) return false;
  for (const Atom& a : atoms_)
    if (!holds(a, v)) return false;
  return true;
}

void BruteForce::for_each_solution(const std::function<void(const std::vector<Value>&)>& f) const {
  if (bottom_) return;
  const std::size_t n = vars_.size();
  // Each atom is checked as soon as its last variable is assigned.
  std::vector<std::vector<const Atom*>> ready(n + 1);
  for (const Atom& a : atoms_) ready[std::size_t(std::max(a.lhs_var, a.rhs_var) + 1)].push_back(&a);
  std::vector<Value> cur(n, Value{-1, 0});
  for (const Atom* a : ready[0])
    if (!holds(*a, cur)) return;
  // A failing atom whose lhs holds variable i fails for every larger exponent
  // of i; so does an equation whose side with i is already past the other.
  auto dead_above = [&](const Atom& a, std::size_t i) {
    const int v = int(i);
    if (a.lhs_var == v && (!a.equality || a.rhs_var == v)) return true;
    if (!a.equality) return false;
    int mine = a.lhs_var == v ? a.lhs_shift : a.rhs_shift;
    int other_var = a.lhs_var == v ? a.rhs_var : a.lhs_var;
    int other_shift = a.lhs_var == v ? a.rhs_shift : a.lhs_shift;
    if (other_var < 0 || cur[std::size_t(other_var)].base != cur[i].base) return true;
    return cur[i].exp + mine > cur[std::size_t(other_var)].exp + other_shift;
  };
  enum class Check { Ok, Fail, FailAbove };
  auto consistent = [&](std::size_t i) {
    Check r = Check::Ok;
    for (const Atom* a : ready[i + 1]) {
      if (holds(*a, cur)) continue;
      if (cur[i].base >= 0 && dead_above(*a, i)) return Check::FailAbove;
      r = Check::Fail;
    }
    return r;
  };
  // Depth-first over variables; `used` is the number of bases opened so far.
  auto go = [&](auto& self, std::size_t i, int used) -> void {
    if (i == n) {
      f(cur);
      return;
    }
    cur[i] = Value{-1, 0};
    if (consistent(i) == Check::Ok) self(self, i + 1, used);
    int limit = canonical_ ? std::min<int>(used + 1, int(n)) : int(n);
    for (int b = 0; b < limit; ++b) {
      for (int k = 0; k <= exp_budget_; ++k) {
        cur[i] = Value{b, k};
        Check c = consistent(i);
        if (c == Check::FailAbove) break;
        if (c == Check::Ok) self(self, i + 1, canonical_ ? std::max(used, b + 1) : used);
      }
    }
  };
  go(go, 0, 0);
}

SizeSubst BruteForce::to_subst(const std::vector<Value>& v) const {
  SizeSubst phi;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (v[i].base < 0)
      phi.bind(vars_[i], SizeExpr::infinity());
    else
      phi.bind(vars_[i], SizeExpr::var(bases_[v[i].base], std::uint32_t(v[i].exp)));
  }
  return phi;
}

std::vector<SizeSubst> brute_force_solve(const ConstraintProblem& c, std::size_t var_budget, int exp_budget,
                                         bool canonical_bases) {
  BruteForce bf(c, var_budget, exp_budget, canonical_bases);
  std::vector<SizeSubst> out;
  bf.for_each_solution([&](const std::vector<BruteForce::Value>& v) { out.push_back(bf.to_subst(v)); });
  return out;
}

}  // namespace cacsa
