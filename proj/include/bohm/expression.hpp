#pragma once

#include <complex>
#include <stdexcept>
#include <string_view>

namespace bohm {

class ExpressionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Evaluate a small arithmetic expression over complex numbers.
///
/// Supports + - * / ^, parentheses, the constants `pi` and `i`, an imaginary
/// suffix on literals (`0.5i`) and the functions sqrt, exp, cos, sin.
/// Examples: "sqrt(2/3)", "-i*sqrt(5.2/12)", "1.424*pi", "0.3-0.4i".
std::complex<double> evaluate_expression(std::string_view text);

/// Same, but rejects results with a nonzero imaginary part.
double evaluate_real(std::string_view text);

} // namespace bohm
