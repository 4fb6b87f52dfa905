#pragma once

#include <cstddef>
#include <cstdint>

namespace fa::kernels {

/// dst[i] ^= src[i] for i in [0, n). The inner loop of GF(2) row reduction.
using XorRowsFn = void (*)(uint64_t *dst, const uint64_t *src, size_t n);

namespace generic {
void xor_rows(uint64_t *dst, const uint64_t *src, size_t n);
}

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void xor_rows(uint64_t *dst, const uint64_t *src, size_t n);
}
#endif

#if defined(__aarch64__)
namespace neon {
void xor_rows(uint64_t *dst, const uint64_t *src, size_t n);
}
#endif

/// Runtime-selected variant (set once at startup; FA_FORCE_SCALAR=1 in the
/// environment pins the scalar reference kernel).
extern XorRowsFn xor_rows;

/// Name of the selected variant: "scalar", "avx2" or "neon".
const char *active_kernel_name();

} // namespace fa::kernels
