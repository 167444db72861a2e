#include "latlab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "latlab/error.hpp"

namespace latlab {

Rational make_rational(const Integer& num, const Integer& den) {
  require(den != 0, ErrorCode::kInvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) fail(ErrorCode::kInvalidArgument, "not a number: " + std::string(whole));
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorCode::kInvalidArgument, "not a number: " + std::string(whole));
    }
  }
  return Integer(std::string(digits), 10);
}

Integer pow10(long k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(ErrorCode::kInvalidArgument, "empty number");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(s.substr(0, slash), text);
    const Integer den = parse_integer(s.substr(slash + 1), text);
    out = make_rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view tail = s.substr(e + 1);
      bool exp_negative = false;
      if (!tail.empty() && (tail.front() == '+' || tail.front() == '-')) {
        exp_negative = tail.front() == '-';
        tail.remove_prefix(1);
      }
      const Integer magnitude = parse_integer(tail, text);
      require(magnitude.fits_slong_p() && abs(magnitude) < 100000, ErrorCode::kInvalidArgument,
              "exponent out of range: " + std::string(text));
      exponent = magnitude.get_si() * (exp_negative ? -1 : 1);
      s = s.substr(0, e);
    }
    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      exponent -= static_cast<long>(s.size() - dot - 1);
      if (digits.empty()) fail(ErrorCode::kInvalidArgument, "not a number: " + std::string(text));
    } else {
      digits = std::string(s);
    }
    const Integer mantissa = parse_integer(digits, text);
    out = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                        : make_rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-out) : out;
}

Integer floor_integer(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil_integer(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer round_integer(const Rational& x) { return floor_integer(x + Rational(1, 2)); }

Rational pow2_neg(unsigned bits) {
  Rational out(1);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::kRational ? "rational" : "float";
}

unsigned auto_precision_bits(int n_max, double log10_t_max) {
  require(n_max >= 1 && log10_t_max >= 0, ErrorCode::kInvalidArgument,
          "precision sizing needs n >= 1 and t >= 1");
  return static_cast<unsigned>(std::ceil(3.33 * (n_max + 2) * log10_t_max)) + 64;
}

}  // namespace latlab
