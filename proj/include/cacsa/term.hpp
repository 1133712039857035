#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cacsa/size.hpp"

namespace cacsa {

enum class Sort { Star, Box };

enum class TermKind { Sort, BVar, FVar, Const, Symb, Abs, Prod, App };

struct TermNode;

/// An immutable, shared term. Bound variables are de Bruijn indices; free
/// variables are named. Binders keep their source name only as a printing
/// hint, so structural equality (alpha_eq) is alpha-equivalence.
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

  bool valid() const { return node_ != nullptr; }
  const TermNode& operator*() const { return *node_; }
  const TermNode* operator->() const { return node_.get(); }
  const TermNode* get() const { return node_.get(); }

  TermKind kind() const;

 private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind = TermKind::Sort;
  Sort sort = Sort::Star;    // Sort
  std::uint32_t index = 0;   // BVar
  std::string name;          // FVar, Const, Symb; binder hint for Abs, Prod
  SizeExpr size;             // Const
  Term left;                 // domain (Abs, Prod) or function (App)
  Term right;                // body (Abs, Prod) or argument (App)
};

inline TermKind Term::kind() const { return node_->kind; }

Term mk_sort(Sort s);
Term mk_star();
Term mk_box();
Term mk_bvar(std::uint32_t i);
Term mk_fvar(const std::string& name);
Term mk_const(const std::string& name, SizeExpr size = SizeExpr::infinity());
Term mk_symb(const std::string& name);
/// `body` refers to the bound variable as index 0.
Term mk_abs(const std::string& hint, Term domain, Term body);
Term mk_prod(const std::string& hint, Term domain, Term body);
/// Non-dependent product; `codomain` is shifted under the new binder.
Term mk_arrow(Term domain, Term codomain);
Term mk_app(Term fn, Term arg);
Term mk_apps(Term head, const std::vector<Term>& args);

/// Binds the free variable `name` in `body`.
Term mk_abs_named(const std::string& name, Term domain, const Term& body);
Term mk_prod_named(const std::string& name, Term domain, const Term& body);

/// Structural equality up to renaming of bound variables. Size annotations
/// compare as normal forms.
bool alpha_eq(const Term& a, const Term& b);
/// alpha_eq after erasing every size annotation.
bool alpha_eq_erased(const Term& a, const Term& b);

std::set<std::string> free_vars(const Term& t);
std::set<SizeVar> size_vars(const Term& t);
/// Every size annotation is `oo`.
bool is_infinity_term(const Term& t);
/// All annotations replaced by `oo`.
Term erase_sizes(const Term& t);

/// Capture-free replacement of free variables.
using TermSubst = std::map<std::string, Term>;
Term subst_term(const TermSubst& sigma, const Term& t);
/// Applies `phi` to every annotation.
Term subst_size(const SizeSubst& phi, const Term& t);

/// Adds `d` to every bound index at or above `cutoff`.
Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff = 0);
/// Substitutes `u` for index 0 of `body` (the body of a binder), lowering
/// the other loose indices.
Term instantiate(const Term& body, const Term& u);
/// Replaces the free variable `name` by index 0, raising loose indices.
Term abstract(const Term& t, const std::string& name);
bool has_loose_bvar(const Term& t, std::uint32_t index = 0);
bool is_locally_closed(const Term& t);

/// Head and arguments of a left-nested application.
std::pair<Term, std::vector<Term>> spine(const Term& t);
/// Number of leading products.
std::size_t product_arity(const Term& t);

/// An ordered typing environment; later entries may mention earlier names.
class Env {
 public:
  using Entry = std::pair<std::string, Term>;

  Env() = default;
  Env(std::initializer_list<Entry> entries) : entries_(entries) {}

  const Term* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }
  Env extended(const std::string& name, Term type) const;
  void push(const std::string& name, Term type) { entries_.emplace_back(name, std::move(type)); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

Env subst_size(const SizeSubst& phi, const Env& env);
std::set<SizeVar> size_vars(const Env& env);

/// Surface rendering; binder names are renamed away from names in scope.
std::string to_string(const Term& t);
/// As above, printing the listed free variables with the given text.
std::string to_string(const Term& t, const std::map<std::string, std::string>& fvar_text);
std::ostream& operator<<(std::ostream& os, const Term& t);
const char* to_string(Sort s);

}  // namespace cacsa
