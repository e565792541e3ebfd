#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops of the lattice searches and the piecewise-linear
// residual sweeps.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. Variants use the same operation order and no
// fused multiply-add, so their outputs are bit-identical to the reference.

namespace kaddlab::simd {

enum class Backend { Scalar, Avx2 };

const char* to_string(Backend b);

struct KernelTable {
  Backend backend;

  // out[i] = |(n[i] * ln_a + m[i] * ln_b) - u|
  void (*lattice_errors)(double ln_a, double ln_b, double u, const double* n, const double* m,
                         double* out, std::size_t count);

  // t = n[i] * x0 - y0; m_out[i] = nearest integer to t (ties to even);
  // err_out[i] = |t - m_out[i]|
  void (*kronecker_errors)(double x0, double y0, const double* n, double* m_out, double* err_out,
                           std::size_t count);

  // f(t) = t > 0 ? b t : a t
  // out[i] = f(f(-x) + x) - f(-f(x)) - f(x)
  void (*two_slope_kadd)(double a, double b, const double* x, double* out, std::size_t count);
  // out[i] = f(f(x) + x) - f(f(x)) - f(x)
  void (*two_slope_add)(double a, double b, const double* x, double* out, std::size_t count);
};

const KernelTable& scalar_kernels();

// Null when the backend is not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Backend b);

// Best backend supported by the running CPU, chosen once.
const KernelTable& active_kernels();

std::vector<Backend> available_backends();

// Span conveniences over the active table.
void lattice_errors(double ln_a, double ln_b, double u, std::span<const double> n,
                    std::span<const double> m, std::span<double> out);
void kronecker_errors(double x0, double y0, std::span<const double> n, std::span<double> m_out,
                      std::span<double> err_out);

}  // namespace kaddlab::simd
