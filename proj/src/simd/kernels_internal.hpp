#pragma once

#include "kaddlab/simd/kernels.hpp"

namespace kaddlab::simd::detail {

#if defined(KADDLAB_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

}  // namespace kaddlab::simd::detail
