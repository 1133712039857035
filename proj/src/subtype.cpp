#include "cacsa/subtype.hpp"

namespace cacsa {

bool subtype_nf(const Term& t, const Term& u) {
  if (alpha_eq(t, u)) return true;
  if (t.kind() == TermKind::Prod && u.kind() == TermKind::Prod)
    return subtype_nf(u->left, t->left) && subtype_nf(t->right, u->right);

  auto [th, targs] = spine(t);
  auto [uh, uargs] = spine(u);
  if (th.kind() != TermKind::Const || uh.kind() != TermKind::Const) return false;
  if (th->name != uh->name || targs.size() != uargs.size()) return false;
  if (!size_leq(th->size, uh->size)) return false;
  for (std::size_t i = 0; i < targs.size(); ++i) {
    if (!alpha_eq(targs[i], uargs[i]) || !size_vars(targs[i]).empty()) return false;
  }
  return true;
}

bool subtype(const Signature& sig, const Term& t, const Term& u, std::uint64_t fuel) {
  return subtype_nf(normalize_term(sig, t, fuel), normalize_term(sig, u, fuel));
}

}  // namespace cacsa
