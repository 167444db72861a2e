#pragma once

#include <optional>
#include <string>

#include "latlab/bigfloat.hpp"
#include "latlab/scalar.hpp"

namespace latlab {

// Constant real expressions used in configs and on the command line:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' integer)?
//   atom    := number | 'pi' | 'e' | '(' expr ')'
//            | 'sqrt(' expr ')' | 'cbrt(' expr ')' | 'root(' expr ',' integer ')'
//   number  := decimal literal with optional exponent, e.g. 12, 0.25, 1e-3
// Throws InvalidArgument on malformed input, OutOfDomain on a negative even
// root or division by zero.
BigFloat parse_real(const std::string& text, unsigned bits);

// The exact value when the expression uses only rational operations.
std::optional<Rational> parse_real_exact(const std::string& text);

// Dyadic bounds lo <= x <= hi from outward-rounded evaluation at `bits`
// (lo == hi for rational expressions). Throws PrecisionExhausted when a
// divisor's enclosure contains zero.
struct RealEnclosure {
  Rational lo, hi;
};
RealEnclosure enclose_real(const std::string& text, unsigned bits);

}  // namespace latlab
