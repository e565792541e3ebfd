#include "kaddlab/continued_fraction.hpp"

#include <cmath>
#include <limits>

#include "kaddlab/error.hpp"

namespace kaddlab {
namespace {

using i128 = __int128;

constexpr int kMaxDenominatorShift = 120;

i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace

ContinuedFraction continued_fraction(double x, int max_terms, std::int64_t denom_bound) {
  if (!std::isfinite(x)) throw InvalidArgument("continued_fraction: x must be finite");
  if (max_terms <= 0 || denom_bound <= 0) {
    throw InvalidArgument("continued_fraction: bounds must be positive");
  }
  constexpr i128 kInt64Max = std::numeric_limits<std::int64_t>::max();
  if (std::fabs(x) >= 9.2e18) throw InvalidArgument("continued_fraction: |x| too large for int64 quotients");

  ContinuedFraction cf;
  cf.value = x;

  // x = mantissa * 2^exponent exactly, with |mantissa| < 2^53.
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  auto mantissa = static_cast<i128>(std::ldexp(frac, 53));
  exponent -= 53;
  i128 num = 0;
  i128 den = 1;
  if (exponent >= 0) {
    num = mantissa << exponent;
  } else {
    int shift = -exponent;
    if (shift > kMaxDenominatorShift) {
      // drops bits far below any representable convergent
      mantissa >>= (shift - kMaxDenominatorShift);
      shift = kMaxDenominatorShift;
    }
    num = mantissa;
    den = static_cast<i128>(1) << shift;
  }

  i128 p_prev = 1, p_prev2 = 0;
  i128 q_prev = 0, q_prev2 = 1;
  for (int k = 0; k < max_terms; ++k) {
    const i128 a = floor_div(num, den);
    if (a > kInt64Max || a < -kInt64Max) break;
    const i128 p = a * p_prev + p_prev2;
    const i128 q = a * q_prev + q_prev2;
    if (q > denom_bound || p > kInt64Max || p < -kInt64Max) break;
    cf.partial_quotients.push_back(static_cast<std::int64_t>(a));
    cf.convergents.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;

    const i128 rem = num - a * den;
    if (rem == 0) {
      cf.terminated = true;
      break;
    }
    num = den;
    den = rem;
  }
  return cf;
}

}  // namespace kaddlab
