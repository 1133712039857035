#include "cacsa/constraint.hpp"

#include <sstream>

namespace cacsa {

Equation::Equation(SizeExpr a, SizeExpr b) {
  if (b < a) std::swap(a, b);
  lhs = std::move(a);
  rhs = std::move(b);
}

ConstraintProblem ConstraintProblem::equal(SizeExpr a, SizeExpr b) {
  ConstraintProblem c;
  c.add_equal(std::move(a), std::move(b));
  return c;
}

ConstraintProblem ConstraintProblem::leq(SizeExpr a, SizeExpr b) {
  ConstraintProblem c;
  c.add_leq(std::move(a), std::move(b));
  return c;
}

void ConstraintProblem::add_equal(SizeExpr a, SizeExpr b) {
  if (!bottom_) eqs_.insert(Equation(std::move(a), std::move(b)));
}

void ConstraintProblem::add_leq(SizeExpr a, SizeExpr b) {
  if (!bottom_) ineqs_.insert(Inequation{std::move(a), std::move(b)});
}

void ConstraintProblem::set_bottom() {
  bottom_ = true;
  eqs_.clear();
  ineqs_.clear();
}

void ConstraintProblem::add(const ConstraintProblem& other) {
  if (bottom_) return;
  if (other.bottom_) {
    set_bottom();
    return;
  }
  eqs_.insert(other.eqs_.begin(), other.eqs_.end());
  ineqs_.insert(other.ineqs_.begin(), other.ineqs_.end());
}

std::set<SizeVar> ConstraintProblem::vars() const {
  std::set<SizeVar> out;
  auto note = [&](const SizeExpr& e) {
    if (!e.is_infinite()) out.insert(e.base());
  };
  for (const auto& e : eqs_) {
    note(e.lhs);
    note(e.rhs);
  }
  for (const auto& e : ineqs_) {
    note(e.lhs);
    note(e.rhs);
  }
  return out;
}

ConstraintProblem conj(const ConstraintProblem& a, const ConstraintProblem& b) {
  ConstraintProblem c = a;
  c.add(b);
  return c;
}

bool satisfies(const SizeSubst& phi, const Equation& e) { return apply(phi, e.lhs) == apply(phi, e.rhs); }

bool satisfies(const SizeSubst& phi, const Inequation& e) { return size_leq(apply(phi, e.lhs), apply(phi, e.rhs)); }

bool satisfies(const SizeSubst& phi, const ConstraintProblem& c) {
  if (c.is_bottom()) return false;
  for (const auto& e : c.equations())
    if (!satisfies(phi, e)) return false;
  for (const auto& e : c.inequations())
    if (!satisfies(phi, e)) return false;
  return true;
}

namespace {

void eq_into(EqMode mode, const Term& u, const Term& v, ConstraintProblem& out) {
  if (out.is_bottom()) return;
  if (u.kind() != v.kind()) {
    out.set_bottom();
    return;
  }
  switch (u.kind()) {
    case TermKind::Const:
      if (u->name != v->name) {
        out.set_bottom();
        return;
      }
      out.add_equal(u->size, v->size);
      if (mode == EqMode::Closed) out.add_leq(SizeExpr::infinity(), u->size);
      return;
    case TermKind::Sort:
      if (u->sort != v->sort) out.set_bottom();
      return;
    case TermKind::BVar:
      if (u->index != v->index) out.set_bottom();
      return;
    case TermKind::FVar:
    case TermKind::Symb:
      if (u->name != v->name) out.set_bottom();
      return;
    case TermKind::Abs:
    case TermKind::Prod:
    case TermKind::App:
      eq_into(mode, u->left, v->left, out);
      eq_into(mode, u->right, v->right, out);
      return;
  }
}

void sub_into(const Term& u, const Term& v, ConstraintProblem& out) {
  if (out.is_bottom()) return;
  if (u.kind() == TermKind::Prod && v.kind() == TermKind::Prod) {
    sub_into(v->left, u->left, out);
    sub_into(u->right, v->right, out);
    return;
  }
  auto [uh, uargs] = spine(u);
  auto [vh, vargs] = spine(v);
  if (uh.kind() == TermKind::Const && vh.kind() == TermKind::Const && uh->name == vh->name &&
      uargs.size() == vargs.size()) {
    out.add_leq(uh->size, vh->size);
    for (std::size_t i = 0; i < uargs.size(); ++i) eq_into(EqMode::Closed, uargs[i], vargs[i], out);
    return;
  }
  eq_into(EqMode::Open, u, v, out);
}

}  // namespace

ConstraintProblem gen_sub(const Term& u, const Term& v) {
  ConstraintProblem out;
  sub_into(u, v, out);
  return out;
}

ConstraintProblem gen_eq(EqMode mode, const Term& u, const Term& v) {
  ConstraintProblem out;
  eq_into(mode, u, v, out);
  return out;
}

std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

std::string to_string(const Inequation& e) { return to_string(e.lhs) + " <= " + to_string(e.rhs); }

std::vector<std::string> atom_lines(const ConstraintProblem& c) {
  if (c.is_bottom()) return {"false"};
  if (c.is_top()) return {"true"};
  std::vector<std::string> out;
  for (const auto& e : c.equations()) out.push_back(to_string(e));
  for (const auto& e : c.inequations()) out.push_back(to_string(e));
  return out;
}

std::string to_string(const ConstraintProblem& c) {
  std::string s;
  for (const auto& line : atom_lines(c)) {
    if (!s.empty()) s += " /\\ ";
    s += line;
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const ConstraintProblem& c) { return os << to_string(c); }

}  // namespace cacsa
