#pragma once

#include "fa/equation.hpp"
#include "fa/word.hpp"

#include <optional>

namespace fa {

/// w = root^exponent with root primitive (not itself a proper power).
struct RootDecomposition {
    Word root;
    int exponent = 1;
};

/// Smallest-period decomposition of a nonempty word; exponent is maximal.
RootDecomposition primitive_root(const Word &w);

/// True iff w contains no factor of the form alpha*alpha for nonempty alpha.
/// This is the "no periodicity" gate on coefficient top monomials; the
/// centralizer results use the weaker "not a proper power" gate instead
/// (primitive_root exponent 1).
bool is_square_free(const Word &w);

/// All L >= 1 with suffix(w1, L) == prefix(w2, L).
std::vector<int> overlap_suffix_prefix(const Word &w1, const Word &w2);

/// x0 = f0 * t0^b = s0^b * e0 with deg(f0) = deg(e0) < deg(s0) = deg(t0).
struct TopFactorization {
    Word s0, t0, e0, f0;
    int b = 0;
};

/// Factor the top monomial of a long solution against the shift-d words
/// s0 = u0 and t0 = v0 (deg(u0) == deg(v0) == d required). Returns nothing
/// when the monomial identity u0*x0 == x0*v0 fails.
std::optional<TopFactorization> top_factorization(const Word &u0, const Word &v0,
                                                  const Word &x0, int d);

/// Alignment offsets of the n-1 appearances of x between the two sides of a
/// monomial equation, computed from coefficient degrees alone (independent
/// of the substituted degree once the equation is balanced).
struct ShiftProfile {
    std::vector<int> offsets;          // offsets[i] for appearance i+1 (0-based storage)
    std::optional<int> min_positive;   // absent when all offsets are 0
    std::vector<int> shifted;          // 0-based appearance indices with offset > 0
    std::vector<int> unshifted;        // complementary indices
    int x_degree = 0;

    bool all_zero() const { return !min_positive.has_value(); }
};

/// Throws std::invalid_argument on degree imbalance (no x degree can equalize
/// the two sides of an unbalanced equation).
ShiftProfile shift_profile(const MonomialEquation &eq, int x_degree);

} // namespace fa
