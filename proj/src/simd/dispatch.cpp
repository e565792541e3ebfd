#include <cassert>

#include "kernels_internal.hpp"

namespace kaddlab::simd {
#if defined(KADDLAB_HAVE_AVX2)
namespace {

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace
#endif

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

const KernelTable* kernels_for(Backend b) {
  switch (b) {
    case Backend::Scalar: return &scalar_kernels();
    case Backend::Avx2:
#if defined(KADDLAB_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::avx2_kernels();
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    if (const auto* avx2 = kernels_for(Backend::Avx2)) return *avx2;
    return scalar_kernels();
  }();
  return table;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (kernels_for(Backend::Avx2)) out.push_back(Backend::Avx2);
  return out;
}

void lattice_errors(double ln_a, double ln_b, double u, std::span<const double> n,
                    std::span<const double> m, std::span<double> out) {
  assert(n.size() == m.size() && n.size() == out.size());
  active_kernels().lattice_errors(ln_a, ln_b, u, n.data(), m.data(), out.data(), n.size());
}

void kronecker_errors(double x0, double y0, std::span<const double> n, std::span<double> m_out,
                      std::span<double> err_out) {
  assert(n.size() == m_out.size() && n.size() == err_out.size());
  active_kernels().kronecker_errors(x0, y0, n.data(), m_out.data(), err_out.data(), n.size());
}

}  // namespace kaddlab::simd
