#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fa {

/// A monomial in the free algebra: a finite word over generator indices
/// 0..k-1. The empty word is the multiplicative identity. Words are ordered
/// degree-lexicographically (shorter first, then lexicographic with
/// generator 0 < 1 < ...), which is the monomial order used everywhere.
class Word {
  public:
    Word() = default;
    explicit Word(std::string letters) : letters_(std::move(letters)) {}

    static Word one() { return Word{}; }
    static Word generator(int i) { return Word(std::string(1, char(i))); }

    int degree() const { return int(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    int letter(int i) const { return int(static_cast<unsigned char>(letters_[size_t(i)])); }
    const std::string &letters() const { return letters_; }

    int max_letter() const
    {
        int m = -1;
        for (char c : letters_)
            m = std::max(m, int(static_cast<unsigned char>(c)));
        return m;
    }

    Word operator*(const Word &rhs) const { return Word(letters_ + rhs.letters_); }

    Word prefix(int len) const { return Word(letters_.substr(0, size_t(len))); }
    Word suffix(int len) const
    {
        return Word(letters_.substr(letters_.size() - size_t(len)));
    }
    Word slice(int from, int len) const { return Word(letters_.substr(size_t(from), size_t(len))); }

    bool has_prefix(const Word &p) const
    {
        return letters_.size() >= p.letters_.size() &&
               letters_.compare(0, p.letters_.size(), p.letters_) == 0;
    }
    bool has_suffix(const Word &s) const
    {
        return letters_.size() >= s.letters_.size() &&
               letters_.compare(letters_.size() - s.letters_.size(),
                                s.letters_.size(), s.letters_) == 0;
    }

    Word pow(int n) const
    {
        std::string r;
        r.reserve(letters_.size() * size_t(n));
        for (int i = 0; i < n; ++i)
            r += letters_;
        return Word(std::move(r));
    }

    bool operator==(const Word &rhs) const = default;

    // degree-lexicographic order
    std::strong_ordering operator<=>(const Word &rhs) const
    {
        if (letters_.size() != rhs.letters_.size())
            return letters_.size() <=> rhs.letters_.size();
        int c = letters_.compare(rhs.letters_);
        return c <=> 0;
    }

    /// Renders with generator i as letter 'a'+i; empty word renders as "1".
    std::string str() const
    {
        if (letters_.empty())
            return "1";
        std::string out;
        out.reserve(letters_.size());
        for (char c : letters_) {
            int i = int(static_cast<unsigned char>(c));
            if (i >= 26)
                throw std::runtime_error("word has generator index beyond 'z'");
            out += char('a' + i);
        }
        return out;
    }

  private:
    std::string letters_; // raw generator indices, not ascii
};

} // namespace fa
