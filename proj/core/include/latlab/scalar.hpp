#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "latlab/bigfloat.hpp"

namespace latlab {

// Exact rational. gmpxx arithmetic keeps every result canonical (lowest
// terms, positive denominator); values built from raw numerator/denominator
// pairs must go through make_rational().
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);

// Parses "-3", "7/12" or a finite decimal such as "0.125" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

Integer floor_integer(const Rational& x);
Integer ceil_integer(const Rational& x);
// Nearest integer, halves rounded up: floor(x + 1/2).
Integer round_integer(const Rational& x);

// 2^(-bits) as an exact rational.
Rational pow2_neg(unsigned bits);

enum class Backend { kRational, kFloat };

std::string_view backend_name(Backend backend);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::kRational;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_integer(long k) { return Rational(k); }
  static Rational to_rational(const Rational& x) { return x; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static unsigned precision(const Rational&) { return 0; }
  // Exact mode decides zero-ness exactly.
  static bool negligible(const Rational& x, unsigned = 4) { return sgn(x) == 0; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<BigFloat> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::kFloat;
  static BigFloat from_rational(const Rational& q) { return BigFloat(q); }
  static BigFloat from_integer(long k) { return BigFloat(k); }
  static Rational to_rational(const BigFloat& x) { return x.to_rational(); }
  static double to_double(const BigFloat& x) { return x.to_double(); }
  static BigFloat abs(const BigFloat& x) { return latlab::abs(x); }
  static unsigned precision(const BigFloat& x) { return x.precision(); }
  // |x| <= 2^(-precision/divisor); divisor 4 is the module-wide tolerance.
  static bool negligible(const BigFloat& x, unsigned divisor = 4) {
    if (x.is_zero()) return true;
    return x.exponent2() < -static_cast<long>(x.precision() / divisor);
  }
  static std::string to_string(const BigFloat& x) { return x.to_string(30); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <Scalar T>
T from_rational(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

template <Scalar T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <Scalar T>
T abs_value(const T& x) {
  return ScalarTraits<T>::abs(x);
}

template <Scalar T>
int sign_of(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    return sgn(x);
  } else {
    return x.sign();
  }
}

// log2|x| as a double; -inf for zero.
template <Scalar T>
double log2_abs(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    if (sgn(x) == 0) return -INFINITY;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
    return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(en - ed);
  } else {
    if (x.is_zero()) return -INFINITY;
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  }
}

// Default mantissa size for float pipelines: with t <= 10^log10_t_max and
// n <= n_max, ceil(3.33 (n_max + 2) log10_t_max) + 64 bits leave at least 64
// accurate bits after the t^(n+1) cancellation in the basic identity.
unsigned auto_precision_bits(int n_max, double log10_t_max);

}  // namespace latlab
