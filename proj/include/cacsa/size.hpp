#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cacsa {

/// A size variable. Variables are ordered by name. Names starting with '?'
/// are reserved for variables handed out by FreshSizeVars; the surface syntax
/// cannot produce them.
class SizeVar {
 public:
  SizeVar() = default;
  explicit SizeVar(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  bool is_reserved() const { return !name_.empty() && name_.front() == '?'; }

  friend bool operator==(const SizeVar&, const SizeVar&) = default;
  friend std::strong_ordering operator<=>(const SizeVar& a, const SizeVar& b) {
    return a.name_.compare(b.name_) <=> 0;
  }

 private:
  std::string name_;
};

/// A size expression in A-normal form: `oo`, or `s^k(alpha)` for k >= 0.
///
/// The representation is run-length (base variable plus successor count), so
/// a value of this type can never hold the redex `s oo`. Equality is
/// syntactic, which on normal forms coincides with the equivalence induced
/// by the size ordering.
class SizeExpr {
 public:
  /// The default value is `oo`.
  SizeExpr() = default;

  static SizeExpr infinity() { return SizeExpr(); }
  static SizeExpr var(SizeVar v, std::uint32_t shift = 0) {
    SizeExpr e;
    e.infinite_ = false;
    e.base_ = std::move(v);
    e.shift_ = shift;
    return e;
  }
  static SizeExpr var(const std::string& name, std::uint32_t shift = 0) {
    return var(SizeVar(name), shift);
  }

  bool is_infinite() const { return infinite_; }
  bool is_variable() const { return !infinite_ && shift_ == 0; }
  /// pre: !is_infinite()
  const SizeVar& base() const { return base_; }
  std::uint32_t shift() const { return shift_; }

  /// k successors; stays `oo` when this is `oo`.
  SizeExpr succ(std::uint32_t k = 1) const {
    if (infinite_) return *this;
    return var(base_, shift_ + k);
  }

  /// Count of symbols and variables: `s^k(alpha)` has k+1, `oo` has 1.
  std::size_t symbol_count() const { return infinite_ ? 1 : shift_ + 1; }

  friend bool operator==(const SizeExpr& a, const SizeExpr& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.shift_ == b.shift_ && a.base_ == b.base_;
  }
  /// Total order: variable-based expressions by (base, shift), then `oo`.
  friend std::strong_ordering operator<=>(const SizeExpr& a, const SizeExpr& b) {
    if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.infinite_) return std::strong_ordering::equal;
    if (auto c = a.base_ <=> b.base_; c != 0) return c;
    return a.shift_ <=> b.shift_;
  }

 private:
  bool infinite_ = true;
  SizeVar base_;
  std::uint32_t shift_ = 0;
};

/// Size syntax as written, before normalization: `s^k` applied to either a
/// variable or `oo`. Only this type can express the redex `s oo`.
struct SizeSyntax {
  std::optional<SizeVar> atom;  // nullopt is `oo`
  std::uint32_t succs = 0;

  static SizeSyntax infinity(std::uint32_t succs = 0) { return {std::nullopt, succs}; }
  static SizeSyntax var(const std::string& name, std::uint32_t succs = 0) { return {SizeVar(name), succs}; }
  friend bool operator==(const SizeSyntax&, const SizeSyntax&) = default;
};

/// The unique normal form under `s oo -> oo`.
SizeExpr normalize(const SizeSyntax& a);
/// Every normal form is its own syntax.
SizeSyntax to_syntax(const SizeExpr& a);

/// The size quasi-ordering: true iff `b = oo`, or both share a base variable
/// and `a`'s successor count does not exceed `b`'s.
bool size_leq(const SizeExpr& a, const SizeExpr& b);

/// A finite map from size variables to normal size expressions, identity
/// outside its domain. Identity bindings are never stored, so two
/// substitutions compare equal iff they denote the same function.
class SizeSubst {
 public:
  using Binding = std::pair<SizeVar, SizeExpr>;

  SizeSubst() = default;
  SizeSubst(std::initializer_list<Binding> bindings);

  /// Binds `v` (replacing any existing binding). Binding `v` to itself erases it.
  void bind(const SizeVar& v, SizeExpr e);
  const SizeExpr* find(const SizeVar& v) const;
  SizeExpr image(const SizeVar& v) const;

  std::vector<SizeVar> domain() const;
  const std::vector<Binding>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  /// Variables occurring in the range.
  std::set<SizeVar> range_vars() const;
  /// Keeps only the bindings of `vars`.
  SizeSubst restricted(const std::set<SizeVar>& vars) const;

  friend bool operator==(const SizeSubst&, const SizeSubst&) = default;

 private:
  std::vector<Binding> bindings_;  // sorted by variable
};

/// `a` with `phi` applied, in normal form.
SizeExpr apply(const SizeSubst& phi, const SizeExpr& a);

/// The substitution `alpha -> (alpha first) then`, i.e. first `first`, then `then`.
SizeSubst compose(const SizeSubst& first, const SizeSubst& then);

/// Pointwise ordering: `alpha phi <= alpha psi` for every variable.
bool subst_leq(const SizeSubst& phi, const SizeSubst& psi);

/// When `phi` is more general than `psi`, returns a `rest` with
/// `compose(phi, rest)` below `psi` on every variable that `phi` or `psi`
/// moves. Variables moved by neither, such as fresh bases in the range of
/// `phi`, are not compared.
///
/// Each variable `beta` occurring in the range of `phi` is solved on its own:
/// collect every requirement `s^k(beta rest) <= alpha psi` with
/// `alpha phi = s^k beta`. Targets equal to `oo` hold for any choice. The
/// remaining targets must share one base `gamma`, and `beta rest` is
/// `s^m gamma` with m the least slack (target exponent minus k), which must
/// be nonnegative. Variables mapped to `oo` by `phi` require `oo` in `psi`.
std::optional<SizeSubst> more_general_witness(const SizeSubst& phi, const SizeSubst& psi);
bool more_general(const SizeSubst& phi, const SizeSubst& psi);

/// A monotone supply of size variables that avoids every variable it has
/// seen. Fresh names live in the reserved `?` namespace.
class FreshSizeVars {
 public:
  FreshSizeVars() = default;
  explicit FreshSizeVars(std::set<SizeVar> used) : used_(std::move(used)) {}

  SizeVar fresh();
  void reserve(const SizeVar& v) { used_.insert(v); }
  void reserve(const std::set<SizeVar>& vs) { used_.insert(vs.begin(), vs.end()); }
  bool is_used(const SizeVar& v) const { return used_.count(v) != 0; }
  const std::set<SizeVar>& used() const { return used_; }

 private:
  std::set<SizeVar> used_;
  std::uint64_t counter_ = 0;
};

std::ostream& operator<<(std::ostream& os, const SizeVar& v);
/// `oo`, `a`, `s s a`.
std::ostream& operator<<(std::ostream& os, const SizeExpr& a);
/// `{a := s b, c := oo}`.
std::ostream& operator<<(std::ostream& os, const SizeSubst& phi);
std::string to_string(const SizeExpr& a);
std::string to_string(const SizeSubst& phi);

}  // namespace cacsa
