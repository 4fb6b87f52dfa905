#include "fa/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace fa::kernels::avx2 {

void xor_rows(uint64_t *dst, const uint64_t *src, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i),
                            _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i)
        dst[i] ^= src[i];
}

} // namespace fa::kernels::avx2

#endif
