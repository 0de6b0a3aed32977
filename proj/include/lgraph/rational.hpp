#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgraph {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an operation is called outside its contract (mismatched
/// variable sets, caps, arities, out-of-range orders, restricted parameters).
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised on malformed textual input (polynomials, rationals, JSON fields).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p", "p/q", "-p/q" or an exact decimal such as "0.125" or "-1.5e-2".
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace lgraph
