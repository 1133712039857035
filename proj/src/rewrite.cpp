#include "cacsa/rewrite.hpp"

namespace cacsa {

namespace {

bool match_into(const Term& p, const Term& s, TermSubst& sigma) {
  switch (p.kind()) {
    case TermKind::FVar: {
      auto [it, inserted] = sigma.emplace(p->name, s);
      return inserted || alpha_eq(it->second, s);
    }
    case TermKind::Symb:
      return s.kind() == TermKind::Symb && s->name == p->name;
    case TermKind::Const:
      return s.kind() == TermKind::Const && s->name == p->name;
    case TermKind::Sort:
      return s.kind() == TermKind::Sort && s->sort == p->sort;
    case TermKind::App:
      return s.kind() == TermKind::App && match_into(p->left, s->left, sigma) && match_into(p->right, s->right, sigma);
    default:
      return false;
  }
}

const std::string* head_symbol(const Term& t) {
  const TermNode* n = t.get();
  while (n->kind == TermKind::App) n = n->left.get();
  return n->kind == TermKind::Symb ? &n->name : nullptr;
}

std::optional<Term> try_here(const Signature& sig, const Term& t) {
  if (t.kind() == TermKind::App && t->left.kind() == TermKind::Abs) return instantiate(t->left->right, t->right);
  const std::string* head = head_symbol(t);
  if (!head) return std::nullopt;
  for (const RewriteRule* r : sig.rules_for(*head)) {
    TermSubst sigma;
    if (match_into(r->lhs, t, sigma)) return subst_term(sigma, r->rhs);
  }
  return std::nullopt;
}

std::optional<Term> step(const Signature& sig, const Term& t) {
  if (auto r = try_here(sig, t)) return r;
  switch (t.kind()) {
    case TermKind::Abs:
    case TermKind::Prod:
      if (auto l = step(sig, t->left)) {
        return t.kind() == TermKind::Abs ? mk_abs(t->name, *l, t->right) : mk_prod(t->name, *l, t->right);
      }
      if (auto b = step(sig, t->right)) {
        return t.kind() == TermKind::Abs ? mk_abs(t->name, t->left, *b) : mk_prod(t->name, t->left, *b);
      }
      return std::nullopt;
    case TermKind::App:
      if (auto l = step(sig, t->left)) return mk_app(*l, t->right);
      if (auto a = step(sig, t->right)) return mk_app(t->left, *a);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<TermSubst> match_pattern(const Term& pattern, const Term& subject) {
  TermSubst sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Term> rewrite_step(const Signature& sig, const Term& t) { return step(sig, t); }

Term normalize_term(const Signature& sig, const Term& t, std::uint64_t fuel) {
  Term cur = t;
  for (std::uint64_t used = 0;; ++used) {
    auto next = step(sig, cur);
    if (!next) return cur;
    if (used >= fuel) throw FuelExhausted(fuel);
    cur = std::move(*next);
  }
}

bool convertible(const Signature& sig, const Term& a, const Term& b, std::uint64_t fuel) {
  return alpha_eq(normalize_term(sig, a, fuel), normalize_term(sig, b, fuel));
}

}  // namespace cacsa
