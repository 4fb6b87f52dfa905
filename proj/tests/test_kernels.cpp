#include "fa/kernels.hpp"

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

TEST_SUITE_BEGIN("kernels");

TEST_CASE("selected xor kernel matches the scalar reference")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = rng() % 300;
        std::vector<uint64_t> a(n), b(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = rng();
            b[i] = rng();
        }
        std::vector<uint64_t> expect = a;
        fa::kernels::generic::xor_rows(expect.data(), b.data(), n);
        std::vector<uint64_t> got = a;
        fa::kernels::xor_rows(got.data(), b.data(), n);
        CHECK(got == expect);
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 variant matches scalar when available")
{
    if (!__builtin_cpu_supports("avx2"))
        return;
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = rng() % 129;
        std::vector<uint64_t> a(n), b(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = rng();
            b[i] = rng();
        }
        std::vector<uint64_t> expect = a;
        fa::kernels::generic::xor_rows(expect.data(), b.data(), n);
        std::vector<uint64_t> got = a;
        fa::kernels::avx2::xor_rows(got.data(), b.data(), n);
        CHECK(got == expect);
    }
}
#endif

TEST_CASE("a kernel variant is selected")
{
    std::string name = fa::kernels::active_kernel_name();
    CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}

TEST_SUITE_END();
