#pragma once

#include "fa/element.hpp"

#include <string>
#include <string_view>

namespace fa {

/// Parse failure with 1-based line/column of the offending character.
struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string &what)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + what),
          line(line), col(col)
    {
    }
    int line;
    int col;
};

/// Element grammar:
///   element := '0' | term ('+' term)*
///   term    := '1' | letter+          (letter 'a'..'z' is generator 0..25)
/// '*' between letters is accepted and ignored; whitespace is insignificant.
///
/// `alphabet` <= 0 means infer: max letter used + 1 (at least 1).
Element parse_element(std::string_view text, int alphabet = 0);

Word parse_word(std::string_view text);

/// Canonical rendering, ascending monomial order: "abac+abacab", "0", "1+a".
/// Output always re-parses to an equal element.
std::string to_string(const Element &e);

} // namespace fa
