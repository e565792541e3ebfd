#pragma once

#include <cstdint>
#include <vector>

namespace kaddlab {

struct Convergent {
  std::int64_t p;
  std::int64_t q;  // > 0
  bool operator==(const Convergent&) const = default;
};

// Regular continued fraction x = a0 + 1/(a1 + 1/(a2 + ...)).
//
// The expansion is computed exactly on the binary64 value of x (every
// finite double is a dyadic rational), so rational inputs terminate and the
// recurrence p_k = a_k p_{k-1} + p_{k-2} holds in exact integer arithmetic.
struct ContinuedFraction {
  double value = 0.0;
  std::vector<std::int64_t> partial_quotients;
  std::vector<Convergent> convergents;
  // True when the expansion reached the exact value (no truncation).
  bool terminated = false;
};

// Stops after max_terms quotients, or before the first convergent whose
// denominator exceeds denom_bound or whose numerator overflows int64.
ContinuedFraction continued_fraction(double x, int max_terms, std::int64_t denom_bound);

}  // namespace kaddlab
