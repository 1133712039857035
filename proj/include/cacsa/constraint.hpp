#pragma once

#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cacsa/size.hpp"
#include "cacsa/term.hpp"

namespace cacsa {

/// `lhs = rhs`, oriented so that lhs <= rhs in the SizeExpr order.
struct Equation {
  SizeExpr lhs, rhs;
  Equation() = default;
  Equation(SizeExpr a, SizeExpr b);
  friend bool operator==(const Equation&, const Equation&) = default;
  friend auto operator<=>(const Equation& a, const Equation& b) {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

/// `lhs <= rhs`.
struct Inequation {
  SizeExpr lhs, rhs;
  friend bool operator==(const Inequation&, const Inequation&) = default;
  friend auto operator<=>(const Inequation& a, const Inequation& b) {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

/// A conjunction of equations and inequations, or false. The empty
/// conjunction is true. Sets make the representation canonical.
class ConstraintProblem {
 public:
  static ConstraintProblem top() { return ConstraintProblem(); }
  static ConstraintProblem bottom() {
    ConstraintProblem c;
    c.bottom_ = true;
    return c;
  }
  static ConstraintProblem equal(SizeExpr a, SizeExpr b);
  static ConstraintProblem leq(SizeExpr a, SizeExpr b);

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && eqs_.empty() && ineqs_.empty(); }

  void add_equal(SizeExpr a, SizeExpr b);
  void add_leq(SizeExpr a, SizeExpr b);
  void add(const ConstraintProblem& other);
  void set_bottom();

  const std::set<Equation>& equations() const { return eqs_; }
  const std::set<Inequation>& inequations() const { return ineqs_; }
  std::size_t atom_count() const { return eqs_.size() + ineqs_.size(); }
  std::set<SizeVar> vars() const;

  friend bool operator==(const ConstraintProblem&, const ConstraintProblem&) = default;

 private:
  bool bottom_ = false;
  std::set<Equation> eqs_;
  std::set<Inequation> ineqs_;
};

ConstraintProblem conj(const ConstraintProblem& a, const ConstraintProblem& b);

bool satisfies(const SizeSubst& phi, const Equation& e);
bool satisfies(const SizeSubst& phi, const Inequation& e);
bool satisfies(const SizeSubst& phi, const ConstraintProblem& c);

/// Constraints whose solutions are exactly the size substitutions making `u`
/// a subtype of `v`. Both must be normal forms.
ConstraintProblem gen_sub(const Term& u, const Term& v);

/// Closed: the two sides become equal and lose all size variables.
/// Open: the two sides become equal.
enum class EqMode { Closed, Open };
ConstraintProblem gen_eq(EqMode mode, const Term& u, const Term& v);

std::string to_string(const Equation& e);
std::string to_string(const Inequation& e);
/// One atom per entry; `true` or `false` for the constants.
std::vector<std::string> atom_lines(const ConstraintProblem& c);
std::string to_string(const ConstraintProblem& c);
std::ostream& operator<<(std::ostream& os, const ConstraintProblem& c);

}  // namespace cacsa
