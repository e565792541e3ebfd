#include <cmath>

#include "kernels_internal.hpp"

namespace kaddlab::simd {
namespace {

inline double two_slope(double a, double b, double t) { return t > 0.0 ? b * t : a * t; }

void lattice_errors_scalar(double ln_a, double ln_b, double u, const double* n, const double* m,
                           double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double s = n[i] * ln_a + m[i] * ln_b;
    out[i] = std::fabs(s - u);
  }
}

void kronecker_errors_scalar(double x0, double y0, const double* n, double* m_out, double* err_out,
                             std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double t = n[i] * x0 - y0;
    const double r = std::nearbyint(t);
    m_out[i] = r;
    err_out[i] = std::fabs(t - r);
  }
}

void two_slope_kadd_scalar(double a, double b, const double* x, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double fm = two_slope(a, b, -x[i]);
    const double lhs = two_slope(a, b, fm + x[i]);
    const double fx = two_slope(a, b, x[i]);
    out[i] = lhs - two_slope(a, b, -fx) - fx;
  }
}

void two_slope_add_scalar(double a, double b, const double* x, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double fx = two_slope(a, b, x[i]);
    const double lhs = two_slope(a, b, fx + x[i]);
    out[i] = lhs - two_slope(a, b, fx) - fx;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::Scalar, lattice_errors_scalar, kronecker_errors_scalar,
                                 two_slope_kadd_scalar, two_slope_add_scalar};
  return table;
}

}  // namespace kaddlab::simd
