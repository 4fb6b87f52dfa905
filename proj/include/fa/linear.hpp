#pragma once

#include "fa/equation.hpp"

#include <optional>

namespace fa {

/// Loud refusal when a configured resource cap would be exceeded.
struct ResourceError : std::runtime_error {
    ResourceError(std::string cap, const std::string &what)
        : std::runtime_error(what), cap_name(std::move(cap))
    {
    }
    std::string cap_name;
};

struct SolveOptions {
    size_t column_cap = 200000;   // unknown monomials per variable block
    size_t candidate_cap = 65536; // exhaustive enumeration candidates
};

/// Number of words of degree <= D over k generators; saturates at 2^62.
uint64_t count_words_upto(int k, int D);

/// All words of degree <= D in degree-lex order. Refuses above the column cap.
std::vector<Word> monomial_basis(int k, int D, const SolveOptions &opts = {});

/// sum_j A_j * x * B_j = rhs, linear in the single unknown x.
struct LinearXEquation {
    std::vector<std::pair<Element, Element>> summands;
    Element rhs;

    int alphabet() const { return rhs.alphabet(); }

    /// u*x + x*v = 0 (covers ux = xv over GF(2)).
    static LinearXEquation intertwiner(const Element &u, const Element &v)
    {
        return {{{u, Element::one(u.alphabet())}, {Element::one(u.alphabet()), v}},
                Element::zero(u.alphabet())};
    }
    /// u*x + x*u = 0: the centralizer equation.
    static LinearXEquation commutator(const Element &u)
    {
        return intertwiner(u, u);
    }
    /// u1*x*u2 + v1*x*v2 = 0.
    static LinearXEquation two_block(const Element &u1, const Element &u2,
                                     const Element &v1, const Element &v2)
    {
        return {{{u1, u2}, {v1, v2}}, Element::zero(u1.alphabet())};
    }

    Element apply(const Element &x) const
    {
        Element acc = Element::zero(rhs.alphabet());
        for (const auto &[a, b] : summands)
            acc += a * x * b;
        return acc;
    }
};

/// Row-reduced basis of a bounded-degree solution space. Basis elements have
/// pairwise distinct leading monomials and are listed in increasing
/// leading-monomial order; identical inputs always produce the identical
/// sequence.
struct KernelBasis {
    int degree_bound = 0;
    std::vector<Element> basis;

    size_t dimension() const { return basis.size(); }

    /// Reduce e against the basis; zero result means membership in the span.
    Element reduce(Element e) const;
    bool contains(const Element &e) const { return reduce(e).is_zero(); }
};

/// {x : deg(x) <= D, sum A_j x B_j = 0}, exact over GF(2).
KernelBasis kernel_bounded(const LinearXEquation &eq, int D,
                           const SolveOptions &opts = {});

struct AffineSolution {
    std::optional<Element> particular;
    KernelBasis kernel;
};

/// Particular solution of degree <= D (when one exists) plus the kernel.
AffineSolution solve_affine(const LinearXEquation &eq, int D,
                            const SolveOptions &opts = {});

/// Kernel of sum_b sum_j A_{b,j} X_b B_{b,j} = 0 in several unknowns, each
/// bounded by degree D. Basis vectors are tuples, one Element per block.
struct MultiKernelBasis {
    int degree_bound = 0;
    std::vector<std::vector<Element>> basis;
    size_t dimension() const { return basis.size(); }
};

MultiKernelBasis
kernel_multi(const std::vector<std::vector<std::pair<Element, Element>>> &blocks,
             int alphabet, int D, const SolveOptions &opts = {});

/// Every x with deg(x) <= D solving the full (possibly nonlinear) substituted
/// equation, by exhaustive enumeration over subsets of the monomial basis.
/// `enum_alphabet` restricts candidate monomials to the first so-many
/// generators (0 = the equation's full alphabet). Result is sorted.
std::vector<Element> exhaustive_solutions(const MonomialEquation &eq, int D,
                                          const SolveOptions &opts = {},
                                          int enum_alphabet = 0);

} // namespace fa
