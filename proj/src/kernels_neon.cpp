#include "fa/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace fa::kernels::neon {

void xor_rows(uint64_t *dst, const uint64_t *src, size_t n)
{
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t a = vld1q_u64(dst + i);
        uint64x2_t b = vld1q_u64(src + i);
        vst1q_u64(dst + i, veorq_u64(a, b));
    }
    for (; i < n; ++i)
        dst[i] ^= src[i];
}

} // namespace fa::kernels::neon

#endif
