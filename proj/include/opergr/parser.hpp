#pragma once

#include <string>
#include <string_view>

#include "opergr/psido.hpp"
#include "opergr/series.hpp"

namespace opergr {

struct ParseOptions {
    int order = 12;      ///< truncation order of every coefficient series
    int floor = -8;      ///< lowest power of d kept when a tail is infinite
    int pole_floor = -16;
};

/// Grammar, lowest precedence first:
///   sum   := neg (('+' | '-') neg)*
///   neg   := '-' neg | comp
///   comp  := power (['*'] power)*      juxtaposition and '*' both compose
///   power := atom ['^' ['-'] INT]
///   atom  := NUM ['/' NUM] | 't' | 'd' | '(' sum ')'
/// Two numeric literals in a row are rejected; whitespace never splits a number.
PsiDO parse_operator(std::string_view text, const ParseOptions &opt = {});

/// Laurent polynomial text for the stored coefficients of s, without the O(t^N) marker.
std::string print_polynomial(const Series &s);

/// Normal form as "(c_k)*d^k + ... + (c_0)"; parse_operator reads it back to the same operator.
std::string print_operator(const PsiDO &a);

} // namespace opergr
