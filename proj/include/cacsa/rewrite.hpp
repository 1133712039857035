#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "cacsa/signature.hpp"

namespace cacsa {

inline constexpr std::uint64_t kDefaultFuel = 100000;

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(std::uint64_t fuel)
      : std::runtime_error("normalization did not finish within " + std::to_string(fuel) + " steps"), fuel_(fuel) {}
  std::uint64_t fuel() const { return fuel_; }

 private:
  std::uint64_t fuel_;
};

/// Syntactic matching. Free variables of `pattern` are pattern variables;
/// a repeated one must match alpha-equal subterms. Annotations on constant
/// predicate symbols are ignored.
std::optional<TermSubst> match_pattern(const Term& pattern, const Term& subject);

/// One leftmost-outermost step; beta is tried before the rules, and rules in
/// declaration order.
std::optional<Term> rewrite_step(const Signature& sig, const Term& t);

/// Normal form under beta and the rules. Throws FuelExhausted after `fuel` steps.
Term normalize_term(const Signature& sig, const Term& t, std::uint64_t fuel = kDefaultFuel);

/// Joinability, via normal forms.
bool convertible(const Signature& sig, const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel);

}  // namespace cacsa
