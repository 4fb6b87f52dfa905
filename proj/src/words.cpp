#include "fa/words.hpp"

namespace fa {

RootDecomposition primitive_root(const Word &w)
{
    int n = w.degree();
    if (n == 0)
        throw std::invalid_argument("primitive root of the empty word");
    for (int p = 1; p <= n; ++p) {
        if (n % p != 0)
            continue;
        bool periodic = true;
        for (int i = p; i < n && periodic; ++i)
            periodic = w.letter(i) == w.letter(i % p);
        if (periodic)
            return {w.prefix(p), n / p};
    }
    return {w, 1}; // unreachable: p == n always matches
}

bool is_square_free(const Word &w)
{
    int n = w.degree();
    for (int len = 1; 2 * len <= n; ++len)
        for (int i = 0; i + 2 * len <= n; ++i) {
            bool square = true;
            for (int j = 0; j < len && square; ++j)
                square = w.letter(i + j) == w.letter(i + len + j);
            if (square)
                return false;
        }
    return true;
}

std::vector<int> overlap_suffix_prefix(const Word &w1, const Word &w2)
{
    std::vector<int> out;
    int m = std::min(w1.degree(), w2.degree());
    for (int len = 1; len <= m; ++len)
        if (w1.suffix(len) == w2.prefix(len))
            out.push_back(len);
    return out;
}

std::optional<TopFactorization> top_factorization(const Word &u0, const Word &v0,
                                                  const Word &x0, int d)
{
    if (u0.degree() != d || v0.degree() != d || d < 1)
        throw std::invalid_argument("shift words must both have degree d >= 1");
    if (u0 * x0 != x0 * v0)
        return std::nullopt;
    int b = x0.degree() / d;
    int rem = x0.degree() % d;
    TopFactorization tf;
    tf.s0 = u0;
    tf.t0 = v0;
    tf.f0 = x0.prefix(rem);
    tf.e0 = x0.suffix(rem);
    tf.b = b;
    if (tf.f0 * v0.pow(b) != x0 || u0.pow(b) * tf.e0 != x0)
        return std::nullopt;
    return tf;
}

ShiftProfile shift_profile(const MonomialEquation &eq, int x_degree)
{
    if (!eq.degree_balanced())
        throw std::invalid_argument(
            "degree imbalance: no substitution of that degree can balance the equation");
    ShiftProfile sp;
    sp.x_degree = x_degree;
    int cum_u = 0, cum_v = 0;
    for (int i = 0; i < eq.appearances(); ++i) {
        cum_u += *eq.u()[size_t(i)].degree();
        cum_v += *eq.v()[size_t(i)].degree();
        int off = std::abs(cum_u - cum_v);
        sp.offsets.push_back(off);
        if (off > 0) {
            sp.shifted.push_back(i);
            if (!sp.min_positive || off < *sp.min_positive)
                sp.min_positive = off;
        } else {
            sp.unshifted.push_back(i);
        }
    }
    return sp;
}

} // namespace fa
