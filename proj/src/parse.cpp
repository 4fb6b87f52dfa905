#include "fa/parse.hpp"

namespace fa {

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance()
    {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws()
    {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                           peek() == '\r'))
            advance();
    }
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError(line, col, msg);
    }
};

// term := '1' | letter+ with optional ignored '*' between letters
Word parse_term(Cursor &c)
{
    c.skip_ws();
    if (c.done())
        c.fail("expected term");
    if (c.peek() == '1') {
        c.advance();
        return Word::one();
    }
    std::string letters;
    bool want_letter = true;
    while (!c.done()) {
        char ch = c.peek();
        if (ch >= 'a' && ch <= 'z') {
            letters += char(ch - 'a');
            c.advance();
            want_letter = false;
        } else if (ch == '*') {
            c.advance();
            want_letter = true;
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            c.advance();
        } else {
            break;
        }
    }
    if (letters.empty())
        c.fail("expected 'a'..'z', '1' or '0'");
    if (want_letter)
        c.fail("dangling '*'");
    return Word(std::move(letters));
}

} // namespace

Element parse_element(std::string_view text, int alphabet)
{
    Cursor c{text};
    c.skip_ws();
    if (c.done())
        c.fail("empty input");

    std::vector<Word> terms;
    if (c.peek() == '0') {
        c.advance();
    } else {
        terms.push_back(parse_term(c));
        c.skip_ws();
        while (!c.done() && c.peek() == '+') {
            c.advance();
            terms.push_back(parse_term(c));
            c.skip_ws();
        }
    }
    c.skip_ws();
    if (!c.done())
        c.fail("unexpected trailing input");

    int k = alphabet;
    if (k <= 0) {
        k = 1;
        for (const Word &w : terms)
            k = std::max(k, w.max_letter() + 1);
    }
    for (const Word &w : terms)
        if (w.max_letter() >= k)
            throw ParseError(1, 1, "letter '" + std::string(1, char('a' + w.max_letter())) +
                                       "' outside alphabet of size " + std::to_string(k));
    return Element(k, std::move(terms));
}

Word parse_word(std::string_view text)
{
    Element e = parse_element(text);
    if (e.term_count() != 1)
        throw ParseError(1, 1, "expected a single monomial");
    return e.terms()[0];
}

std::string to_string(const Element &e)
{
    if (e.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const Word &w : e.terms()) {
        if (!first)
            out += "+";
        out += w.str();
        first = false;
    }
    return out;
}

} // namespace fa
