#pragma once

#include "fa/element.hpp"

namespace fa {

/// The one-variable equation u1 x u2 x ... x un = v1 x v2 x ... x vn,
/// given by its two coefficient sequences (n >= 2, all coefficients nonzero).
class MonomialEquation {
  public:
    MonomialEquation(std::vector<Element> u_coeffs, std::vector<Element> v_coeffs)
        : u_(std::move(u_coeffs)), v_(std::move(v_coeffs))
    {
        if (u_.size() != v_.size())
            throw std::invalid_argument("coefficient sequences differ in length");
        if (u_.size() < 2)
            throw std::invalid_argument("monomial equation needs n >= 2 coefficients");
        for (const Element &e : u_)
            check_coeff(e);
        for (const Element &e : v_)
            check_coeff(e);
    }

    int blocks() const { return int(u_.size()); }
    int appearances() const { return int(u_.size()) - 1; }
    int alphabet() const { return u_[0].alphabet(); }
    const std::vector<Element> &u() const { return u_; }
    const std::vector<Element> &v() const { return v_; }

    Element left_side(const Element &x) const { return side(u_, x); }
    Element right_side(const Element &x) const { return side(v_, x); }
    bool holds(const Element &x) const { return left_side(x) == right_side(x); }

    int total_u_degree() const
    {
        int s = 0;
        for (const Element &e : u_)
            s += *e.degree();
        return s;
    }
    int total_v_degree() const
    {
        int s = 0;
        for (const Element &e : v_)
            s += *e.degree();
        return s;
    }
    /// Both sides carry the same number of x's, so substituted degrees agree
    /// for every x exactly when the coefficient degree sums agree.
    bool degree_balanced() const { return total_u_degree() == total_v_degree(); }

    /// The hypothesis gate for the structure solvers: every coefficient has
    /// a single top-degree monomial and that monomial is square-free. This is
    /// checked by callers, never assumed.
    bool tops_monomial() const
    {
        for (const Element &e : u_)
            if (!e.top_is_monomial())
                return false;
        for (const Element &e : v_)
            if (!e.top_is_monomial())
                return false;
        return true;
    }

  private:
    static void check_coeff(const Element &e)
    {
        if (e.is_zero())
            throw std::invalid_argument("equation coefficients must be nonzero");
        if (e.alphabet() < 1)
            throw std::invalid_argument("bad alphabet");
    }

    Element side(const std::vector<Element> &coeffs, const Element &x) const
    {
        Element acc = coeffs[0];
        for (size_t i = 1; i < coeffs.size(); ++i) {
            acc *= x;
            acc *= coeffs[i];
        }
        return acc;
    }

    std::vector<Element> u_, v_;
};

} // namespace fa
