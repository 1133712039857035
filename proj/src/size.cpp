#include "cacsa/size.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cacsa {

SizeExpr normalize(const SizeSyntax& a) {
  if (!a.atom) return SizeExpr::infinity();
  return SizeExpr::var(*a.atom, a.succs);
}

SizeSyntax to_syntax(const SizeExpr& a) {
  if (a.is_infinite()) return SizeSyntax::infinity();
  return SizeSyntax{a.base(), a.shift()};
}

bool size_leq(const SizeExpr& a, const SizeExpr& b) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.base() == b.base() && a.shift() <= b.shift();
}

SizeSubst::SizeSubst(std::initializer_list<Binding> bindings) {
  for (const auto& [v, e] : bindings) bind(v, e);
}

void SizeSubst::bind(const SizeVar& v, SizeExpr e) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const SizeVar& x) { return b.first < x; });
  bool identity = e.is_variable() && e.base() == v;
  if (it != bindings_.end() && it->first == v) {
    if (identity)
      bindings_.erase(it);
    else
      it->second = std::move(e);
  } else if (!identity) {
    bindings_.insert(it, {v, std::move(e)});
  }
}

const SizeExpr* SizeSubst::find(const SizeVar& v) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const SizeVar& x) { return b.first < x; });
  if (it != bindings_.end() && it->first == v) return &it->second;
  return nullptr;
}

SizeExpr SizeSubst::image(const SizeVar& v) const {
  if (const SizeExpr* e = find(v)) return *e;
  return SizeExpr::var(v);
}

std::vector<SizeVar> SizeSubst::domain() const {
  std::vector<SizeVar> out;
  out.reserve(bindings_.size());
  for (const auto& b : bindings_) out.push_back(b.first);
  return out;
}

std::set<SizeVar> SizeSubst::range_vars() const {
  std::set<SizeVar> out;
  for (const auto& [v, e] : bindings_)
    if (!e.is_infinite()) out.insert(e.base());
  return out;
}

SizeSubst SizeSubst::restricted(const std::set<SizeVar>& vars) const {
  SizeSubst out;
  for (const auto& [v, e] : bindings_)
    if (vars.count(v)) out.bindings_.push_back({v, e});
  return out;
}

SizeExpr apply(const SizeSubst& phi, const SizeExpr& a) {
  if (a.is_infinite()) return a;
  return phi.image(a.base()).succ(a.shift());
}

SizeSubst compose(const SizeSubst& first, const SizeSubst& then) {
  SizeSubst out;
  for (const auto& [v, e] : first.bindings()) out.bind(v, apply(then, e));
  for (const auto& [v, e] : then.bindings())
    if (!first.find(v)) out.bind(v, e);
  return out;
}

bool subst_leq(const SizeSubst& phi, const SizeSubst& psi) {
  for (const auto& [v, e] : phi.bindings())
    if (!size_leq(e, psi.image(v))) return false;
  for (const auto& [v, e] : psi.bindings())
    if (!phi.find(v) && !size_leq(SizeExpr::var(v), e)) return false;
  return true;
}

std::optional<SizeSubst> more_general_witness(const SizeSubst& phi, const SizeSubst& psi) {
  // Requirements for phi . rest <= psi on every variable that either side moves.
  std::set<SizeVar> relevant;
  for (const auto& v : phi.domain()) relevant.insert(v);
  for (const auto& v : psi.domain()) relevant.insert(v);

  struct Bound {
    bool any_finite = false;
    SizeVar base;
    std::int64_t slack = 0;
  };
  std::map<SizeVar, Bound> bounds;
  for (const SizeVar& alpha : relevant) {
    SizeExpr src = phi.image(alpha);
    SizeExpr target = psi.image(alpha);
    if (src.is_infinite()) {
      if (!target.is_infinite()) return std::nullopt;
      continue;
    }
    Bound& b = bounds[src.base()];
    if (target.is_infinite()) continue;
    std::int64_t slack = std::int64_t(target.shift()) - std::int64_t(src.shift());
    if (slack < 0) return std::nullopt;
    if (!b.any_finite) {
      b.any_finite = true;
      b.base = target.base();
      b.slack = slack;
    } else {
      if (b.base != target.base()) return std::nullopt;
      b.slack = std::min(b.slack, slack);
    }
  }
  SizeSubst rest;
  for (const auto& [beta, b] : bounds) {
    if (b.any_finite) rest.bind(beta, SizeExpr::var(b.base, std::uint32_t(b.slack)));
  }
  return rest;
}

bool more_general(const SizeSubst& phi, const SizeSubst& psi) {
  return more_general_witness(phi, psi).has_value();
}

SizeVar FreshSizeVars::fresh() {
  for (;;) {
    SizeVar v("?" + std::to_string(++counter_));
    if (used_.insert(v).second) return v;
  }
}

std::ostream& operator<<(std::ostream& os, const SizeVar& v) { return os << v.name(); }

std::ostream& operator<<(std::ostream& os, const SizeExpr& a) {
  if (a.is_infinite()) return os << "oo";
  for (std::uint32_t i = 0; i < a.shift(); ++i) os << "s ";
  return os << a.base();
}

std::ostream& operator<<(std::ostream& os, const SizeSubst& phi) {
  os << '{';
  bool first = true;
  for (const auto& [v, e] : phi.bindings()) {
    if (!first) os << ", ";
    first = false;
    os << v << " := " << e;
  }
  return os << '}';
}

std::string to_string(const SizeExpr& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::string to_string(const SizeSubst& phi) {
  std::ostringstream os;
  os << phi;
  return os.str();
}

}  // namespace cacsa
