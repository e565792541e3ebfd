// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace kaddlab::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline __m256d neg_pd(__m256d v) {
  return _mm256_xor_pd(_mm256_set1_pd(-0.0), v);
}

// t > 0 ? b t : a t
inline __m256d two_slope_pd(__m256d a, __m256d b, __m256d t) {
  const __m256d positive = _mm256_cmp_pd(t, _mm256_setzero_pd(), _CMP_GT_OQ);
  return _mm256_blendv_pd(_mm256_mul_pd(a, t), _mm256_mul_pd(b, t), positive);
}

inline double two_slope(double a, double b, double t) { return t > 0.0 ? b * t : a * t; }

void lattice_errors_avx2(double ln_a, double ln_b, double u, const double* n, const double* m,
                         double* out, std::size_t count) {
  const __m256d va = _mm256_set1_pd(ln_a);
  const __m256d vb = _mm256_set1_pd(ln_b);
  const __m256d vu = _mm256_set1_pd(u);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(n + i), va),
                                    _mm256_mul_pd(_mm256_loadu_pd(m + i), vb));
    _mm256_storeu_pd(out + i, abs_pd(_mm256_sub_pd(s, vu)));
  }
  for (; i < count; ++i) {
    const double s = n[i] * ln_a + m[i] * ln_b;
    out[i] = std::fabs(s - u);
  }
}

void kronecker_errors_avx2(double x0, double y0, const double* n, double* m_out, double* err_out,
                           std::size_t count) {
  const __m256d vx = _mm256_set1_pd(x0);
  const __m256d vy = _mm256_set1_pd(y0);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d t = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(n + i), vx), vy);
    const __m256d r = _mm256_round_pd(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    _mm256_storeu_pd(m_out + i, r);
    _mm256_storeu_pd(err_out + i, abs_pd(_mm256_sub_pd(t, r)));
  }
  for (; i < count; ++i) {
    const double t = n[i] * x0 - y0;
    const double r = std::nearbyint(t);
    m_out[i] = r;
    err_out[i] = std::fabs(t - r);
  }
}

void two_slope_kadd_avx2(double a, double b, const double* x, double* out, std::size_t count) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d fm = two_slope_pd(va, vb, neg_pd(vx));
    const __m256d lhs = two_slope_pd(va, vb, _mm256_add_pd(fm, vx));
    const __m256d fx = two_slope_pd(va, vb, vx);
    const __m256d r = _mm256_sub_pd(_mm256_sub_pd(lhs, two_slope_pd(va, vb, neg_pd(fx))), fx);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < count; ++i) {
    const double fm = two_slope(a, b, -x[i]);
    const double lhs = two_slope(a, b, fm + x[i]);
    const double fx = two_slope(a, b, x[i]);
    out[i] = lhs - two_slope(a, b, -fx) - fx;
  }
}

void two_slope_add_avx2(double a, double b, const double* x, double* out, std::size_t count) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d fx = two_slope_pd(va, vb, vx);
    const __m256d lhs = two_slope_pd(va, vb, _mm256_add_pd(fx, vx));
    const __m256d r = _mm256_sub_pd(_mm256_sub_pd(lhs, two_slope_pd(va, vb, fx)), fx);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < count; ++i) {
    const double fx = two_slope(a, b, x[i]);
    const double lhs = two_slope(a, b, fx + x[i]);
    out[i] = lhs - two_slope(a, b, fx) - fx;
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Backend::Avx2, lattice_errors_avx2, kronecker_errors_avx2,
                                 two_slope_kadd_avx2, two_slope_add_avx2};
  return table;
}

}  // namespace kaddlab::simd::detail
