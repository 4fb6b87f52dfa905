#pragma once

#include "fa/word.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <variant>

namespace fa {

/// A polynomial in the free associative algebra over GF(2): a finite set of
/// words, each present word having coefficient 1. Addition is symmetric
/// difference of term sets. Terms are kept sorted in the monomial order and
/// duplicate-free; equality is structural.
///
/// Values are immutable in spirit: every operation returns a fresh Element.
class Element {
  public:
    explicit Element(int alphabet) : k_(alphabet)
    {
        if (alphabet < 1)
            throw std::invalid_argument("alphabet size must be >= 1");
    }
    Element(int alphabet, std::vector<Word> terms) : k_(alphabet)
    {
        std::sort(terms.begin(), terms.end());
        // pairs cancel in characteristic 2
        for (size_t i = 0; i < terms.size();) {
            size_t j = i;
            while (j < terms.size() && terms[j] == terms[i])
                ++j;
            if ((j - i) % 2 == 1)
                terms_.push_back(terms[i]);
            i = j;
        }
        for (const Word &w : terms_)
            if (w.max_letter() >= k_)
                throw std::invalid_argument("word letter outside alphabet");
    }

    static Element zero(int alphabet) { return Element(alphabet); }
    static Element one(int alphabet) { return Element(alphabet, {Word::one()}); }
    static Element monomial(int alphabet, Word w)
    {
        return Element(alphabet, {std::move(w)});
    }

    int alphabet() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].empty(); }
    bool is_scalar() const { return is_zero() || is_one(); }
    const std::vector<Word> &terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    /// Max term length; empty for the zero element (the "minus infinity"
    /// sentinel, kept out of int arithmetic on purpose).
    std::optional<int> degree() const
    {
        if (terms_.empty())
            return std::nullopt;
        return terms_.back().degree();
    }

    /// Leading monomial in the degree-lex order. Requires a nonzero element.
    const Word &leading_monomial() const
    {
        if (terms_.empty())
            throw std::invalid_argument("zero element has no leading monomial");
        return terms_.back();
    }

    bool contains(const Word &w) const
    {
        return std::binary_search(terms_.begin(), terms_.end(), w);
    }

    Element operator+(const Element &rhs) const
    {
        check_alphabet(rhs);
        Element out(k_);
        out.terms_.reserve(terms_.size() + rhs.terms_.size());
        std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                      rhs.terms_.begin(), rhs.terms_.end(),
                                      std::back_inserter(out.terms_));
        return out;
    }
    Element &operator+=(const Element &rhs) { return *this = *this + rhs; }

    Element operator*(const Element &rhs) const
    {
        check_alphabet(rhs);
        std::vector<Word> prods;
        prods.reserve(terms_.size() * rhs.terms_.size());
        for (const Word &ww : terms_)
            for (const Word &v : rhs.terms_)
                prods.push_back(ww * v);
        return Element(k_, std::move(prods));
    }
    Element &operator*=(const Element &rhs) { return *this = *this * rhs; }

    bool operator==(const Element &rhs) const
    {
        return k_ == rhs.k_ && terms_ == rhs.terms_;
    }

    /// Total order on elements (alphabet, then term sequences); used for
    /// canonical sets of elements, not algebraically meaningful.
    std::strong_ordering operator<=>(const Element &rhs) const
    {
        if (k_ != rhs.k_)
            return k_ <=> rhs.k_;
        return std::lexicographical_compare_three_way(
            terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    }

    /// Sum of terms of degree exactly m.
    Element homogeneous_component(int m) const
    {
        if (m < 0)
            throw std::invalid_argument("homogeneous component of negative degree");
        Element out(k_);
        for (const Word &w : terms_)
            if (w.degree() == m)
                out.terms_.push_back(w);
        return out;
    }

    /// All terms share one degree (0 counts as homogeneous).
    bool is_homogeneous() const
    {
        return terms_.empty() ||
               terms_.front().degree() == terms_.back().degree();
    }

    Element top_homogeneous() const
    {
        if (terms_.empty())
            throw std::invalid_argument("zero element has no top homogeneous part");
        return homogeneous_component(terms_.back().degree());
    }

    bool top_is_monomial() const
    {
        if (terms_.empty())
            return false;
        return terms_.size() == 1 ||
               terms_[terms_.size() - 2].degree() != terms_.back().degree();
    }

    Element power(int n) const
    {
        Element acc = Element::one(k_);
        Element base = *this;
        while (n > 0) {
            if (n & 1)
                acc = acc * base;
            n >>= 1;
            if (n)
                base = base * base;
        }
        return acc;
    }

  private:
    void check_alphabet(const Element &rhs) const
    {
        if (k_ != rhs.k_)
            throw std::invalid_argument("alphabet size mismatch");
    }

    int k_;
    std::vector<Word> terms_;
};

/// Image of a nonzero element in the quotient that retains only the top
/// `width` homogeneous layers: terms of degree > deg(e) - width.
class CodegreeWindow {
  public:
    CodegreeWindow(const Element &e, int width) : width_(width), retained_(e.alphabet())
    {
        if (e.is_zero())
            throw std::invalid_argument("codegree window of zero element");
        if (width < 1)
            throw std::invalid_argument("window width must be >= 1");
        top_degree_ = *e.degree();
        std::vector<Word> keep;
        for (const Word &w : e.terms())
            if (w.degree() > top_degree_ - width)
                keep.push_back(w);
        retained_ = Element(e.alphabet(), std::move(keep));
    }

    int width() const { return width_; }
    int top_degree() const { return top_degree_; }
    const Element &retained() const { return retained_; }

    bool operator==(const CodegreeWindow &rhs) const
    {
        return width_ == rhs.width_ && retained_ == rhs.retained_;
    }

    /// Window arithmetic: the product of two windows of equal width
    /// determines the window of the product.
    CodegreeWindow operator*(const CodegreeWindow &rhs) const
    {
        if (width_ != rhs.width_)
            throw std::invalid_argument("window width mismatch");
        return CodegreeWindow(retained_ * rhs.retained_, width_);
    }

  private:
    int width_;
    int top_degree_;
    Element retained_;
};

inline CodegreeWindow truncate_window(const Element &e, int width)
{
    return CodegreeWindow(e, width);
}

/// p(v) for p given by its GF(2) coefficient sequence c0..cm.
inline Element poly_eval(const std::vector<uint8_t> &coeffs, const Element &v)
{
    Element acc = Element::zero(v.alphabet());
    Element pw = Element::one(v.alphabet());
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] & 1)
            acc += pw;
        if (j + 1 < coeffs.size())
            pw *= v;
    }
    return acc;
}

/// One slot of a substitution template: either a fixed coefficient or a
/// variable to be assigned.
using TemplateSlot = std::variant<Element, int>;

/// Product of the slot values in order; every variable slot must be assigned.
inline Element substitute(const std::vector<TemplateSlot> &tmpl,
                          const std::map<int, Element> &assignment, int alphabet)
{
    Element acc = Element::one(alphabet);
    for (const TemplateSlot &slot : tmpl) {
        if (std::holds_alternative<Element>(slot)) {
            acc *= std::get<Element>(slot);
        } else {
            auto it = assignment.find(std::get<int>(slot));
            if (it == assignment.end())
                throw std::invalid_argument("unassigned variable in template");
            acc *= it->second;
        }
    }
    return acc;
}

} // namespace fa
