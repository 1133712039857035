#pragma once

#include "cacsa/rewrite.hpp"

namespace cacsa {

/// Structural subtyping on normal forms: reflexivity, the size rule for
/// applied constant predicate symbols with closed arguments, and products
/// (contravariant domain, covariant body).
bool subtype_nf(const Term& t, const Term& u);

/// `t <= u`, deciding on normal forms.
bool subtype(const Signature& sig, const Term& t, const Term& u, std::uint64_t fuel = kDefaultFuel);

}  // namespace cacsa
