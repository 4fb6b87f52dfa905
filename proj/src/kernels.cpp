#include "fa/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fa::kernels {

namespace generic {
void xor_rows(uint64_t *dst, const uint64_t *src, size_t n)
{
    for (size_t i = 0; i < n; ++i)
        dst[i] ^= src[i];
}
} // namespace generic

namespace {

const char *selected_name = "scalar";

XorRowsFn select_xor_rows()
{
    const char *force = std::getenv("FA_FORCE_SCALAR");
    if (force && force[0] == '1')
        return generic::xor_rows;
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) {
        selected_name = "avx2";
        return avx2::xor_rows;
    }
#endif
#if defined(__aarch64__)
    selected_name = "neon";
    return neon::xor_rows;
#endif
    return generic::xor_rows;
}

} // namespace

XorRowsFn xor_rows = select_xor_rows();

const char *active_kernel_name() { return selected_name; }

} // namespace fa::kernels
