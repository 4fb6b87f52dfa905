#pragma once

#include "fa/linear.hpp"
#include "fa/words.hpp"

#include <variant>

namespace fa {

/// A computed structure result contradicts an independent check. Never
/// swallowed: the artifact fails loudly instead of emitting a wrong family.
struct FalsificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact quotient q with a = b*q (left) or a = q*b (right); empty when no
/// exact quotient exists. Requires b nonzero with a single top monomial;
/// quotients are unique because the algebra has no zero divisors.
std::optional<Element> left_divide(const Element &a, const Element &b);
std::optional<Element> right_divide(const Element &a, const Element &b);

/// {w_1 p_1(v) + ... + w_d p_d(v) : p_i arbitrary GF(2) polynomials}.
struct ConjugationFamily {
    std::vector<Element> generators;
    Element modulus;

    /// Row-reduced basis of the family members of degree <= D.
    KernelBasis span_upto(int D) const;
    bool contains(const Element &x) const;
};

/// Long solutions are exactly the solutions of s*x = x*t; solutions of
/// degree <= threshold (the paper-side trigger degree) are only claimed
/// within oracle reach and are listed separately.
struct ReductionPair {
    Element s, t;
    long long threshold = 0;
    std::vector<Element> short_solutions;
};

struct SolutionFamily {
    std::variant<ConjugationFamily, ReductionPair> value;
};

struct CentralizerResult {
    Element root;               ///< v with u = p(v)
    std::vector<uint8_t> poly;  ///< coefficients of p, constant first
    ConjugationFamily family;   ///< {p(root)}
    KernelBasis kernel;         ///< oracle kernel of ux + xu used to validate
};

/// Computes the generator of the centralizer of u and validates the span of
/// its powers against the bounded oracle kernel (exact GF(2) equality).
/// Requires a single top monomial, u outside GF(2), and D >= deg(u).
CentralizerResult centralizer(const Element &u, int D, const SolveOptions &opts = {});

enum class SearchTruncation { None, DegreeCap, ColumnCap };

struct ConjugationSolveResult {
    std::optional<ConjugationFamily> family; ///< empty kernel -> no family
    KernelBasis kernel;                      ///< oracle kernel at searched_degree
    int searched_degree = 0;
    long long theoretical_bound = 0; ///< deg(u) * (2^deg(u) + 2), saturated
    SearchTruncation truncated = SearchTruncation::None;

    /// Emptiness is certified only when the search was not truncated.
    bool certified_empty() const
    {
        return !family && truncated == SearchTruncation::None;
    }
};

/// Solution family of u*x = x*v for equal-degree u, v with monomial tops:
/// kernel search up to min(theoretical bound, D_cap, column-cap reach),
/// minimal solutions grouped by top-monomial residue class modulo the root
/// exponent of v's top monomial, then validated span-against-kernel.
ConjugationSolveResult solve_conjugation(const Element &u, const Element &v,
                                         int D_cap, const SolveOptions &opts = {});

enum class ReduceOutcome {
    Reduced,         ///< (s, t) found, decomposition verified, telescoping exact
    NoLongSolutions, ///< structure forced by the theorems fails to exist
};

enum class CoeffCaseTag {
    Equal,            ///< u_i = v_i (stripped or split index)
    BoundaryDivision, ///< u_1 = v_1 s (or mirrored); v_n = t u_n (or mirrored)
    BoundaryMu,       ///< equal-degree boundary: {tau s, tau(s+1)} / {t mu, (t+1) mu}
    ShiftQuotient,    ///< u_i s_i = t_{i-1} v_i (or mirrored)
    ShiftAbsorbed,    ///< u_i = t_{i-1} v_i s_i (or mirrored)
    NoShiftTau,       ///< {u_i, v_i} = {tau s_i, tau (s_i+1)}
    NoShiftMu,        ///< {u_i, v_i} = {t_{i-1} mu, (t_{i-1}+1) mu}
    NoShiftMixed,     ///< {(t_{i-1}+1) mu, tau (s_i+1)} with t_{i-1} mu = tau s_i
    TransitionStart,  ///< shift starts at i: u_i s_i = v_i or the mu forms
    TransitionEnd,    ///< shift ends at i: t_{i-1} u_i = v_i or the tau forms
};

struct CoefficientCase {
    int index = 0; ///< 0-based coefficient index in the original equation
    CoeffCaseTag tag = CoeffCaseTag::Equal;
    bool swapped = false; ///< u and v exchanged in the stated identities
    int s_variant = 0;    ///< s_i = s + s_variant
    int t_variant = 0;    ///< t_{i-1} = t + t_variant
    std::optional<Element> mu, tau;
    std::vector<std::string> identities; ///< exact identities that were checked
};

struct CoefficientDecomposition {
    std::vector<CoefficientCase> cases;
};

struct GeneralReduction {
    ReduceOutcome outcome = ReduceOutcome::NoLongSolutions;
    std::optional<Element> s, t;
    CoefficientDecomposition decomposition;
    long long threshold = 0;
    ShiftProfile profile;   ///< of the original equation
    bool telescoped = false;
    std::vector<Element> short_solutions; ///< oracle solutions within D_cap reach
    std::vector<std::string> notes;
};

/// Theorem-backed reduction of u1 x u2 x ... x un = v1 x v2 x ... x vn to
/// s*x = x*t. Gates (single square-free top monomials, degree balance, some
/// u_i != v_i) are checked. With a hint solution the (s, t) pair is also
/// recovered from the bilinear kernel along the hint and both routes must
/// agree. The forward guarantee is established symbolically: the two sides
/// must cancel exactly modulo the rewriting rule s*x -> x*t.
GeneralReduction reduce_general(const MonomialEquation &eq,
                                const std::optional<Element> &hint, int D_cap,
                                const SolveOptions &opts = {});

struct TwoBlockResult {
    ReduceOutcome outcome = ReduceOutcome::NoLongSolutions;
    std::optional<ReductionPair> pair;
    std::optional<ConjugationFamily> st_family; ///< family of s*x = x*t
    KernelBasis oracle_kernel;                  ///< kernel of u1 x u2 + v1 x v2
    int oracle_degree = 0;
    std::vector<std::string> notes;
};

/// u1 x u2 = v1 x v2 with deg(u1) > deg(v1): s = v1 \ u1, t = v2 / u2.
/// Successful divisions give an equivalence with s*x = x*t at every degree;
/// a failed division certifies that no solution above the trigger degree
/// 2*(deg(u1) + deg(v2))^2 exists, and short solutions are enumerated by the
/// oracle within reach.
TwoBlockResult reduce_two_block(const Element &u1, const Element &u2,
                                const Element &v1, const Element &v2, int D_cap,
                                const SolveOptions &opts = {});

/// Exact ideal-membership test behind the forward guarantee: both sides of
/// the equation cancel modulo the two-sided ideal generated by s*X + X*t.
/// The single rewriting rule lm(s)*X -> (s + lm(s))*X + X*t has no
/// self-overlap, so its normal form decides membership.
bool telescopes_to_zero(const MonomialEquation &eq, const Element &s,
                        const Element &t);

/// The canonical representative of {(s,t), (s+1,t+1)}: the one whose s has
/// the smaller term set when compared leading-terms-first.
std::pair<Element, Element> canonical_pair(const Element &s, const Element &t);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    uint64_t seed = 0;
    int oracle_degree = 0;

    bool passed() const
    {
        for (const CheckResult &c : checks)
            if (c.status == CheckStatus::Fail)
                return false;
        return true;
    }
};

/// Three checks against the bounded oracle: membership (random family
/// members solve the equation exactly, sampled beyond D), completeness
/// (every oracle solution of degree <= D lies in the family), and threshold
/// (oracle solutions above the reduction threshold solve s*x = x*t; skipped
/// and said so when the threshold exceeds oracle reach).
VerifyReport verify_family(const MonomialEquation &eq, const SolutionFamily &fam,
                           int D, const SolveOptions &opts = {},
                           uint64_t seed = 12345);

} // namespace fa
