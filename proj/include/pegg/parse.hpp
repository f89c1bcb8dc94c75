#pragma once

#include <stdexcept>
#include <string>

#include "pegg/equations.hpp"

namespace pegg {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads "P + Q = R" where each term is [coef*]base^exp, e.g.
/// "23^3 + 9*14^4 = 71^3".
///
/// Position assignment: the c-term is the sole term with a coefficient > 1,
/// else the term whose exponent differs from the other two, else R. When the
/// c-term is R the permutation is cz_minus_ax and a is the larger of P, Q;
/// otherwise it is ax_minus_cz with a = R.
OriginalEquation parse_equation(const std::string& text);

}  // namespace pegg
