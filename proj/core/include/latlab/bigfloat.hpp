#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace latlab {

// Thread-local default mantissa size (bits) used when a BigFloat is created
// without an explicit precision, e.g. from an integer literal.
unsigned default_precision();
void set_default_precision(unsigned bits);

// RAII override of the calling thread's default precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Arbitrary-precision binary float backed by MPFR. Every value carries its own
// mantissa size; binary operations round to the larger of the two operand
// precisions (round-to-nearest).
class BigFloat {
 public:
  BigFloat();
  BigFloat(int value);   // NOLINT: integer literals appear throughout generic code
  BigFloat(long value);  // NOLINT
  BigFloat(double value, unsigned bits);
  BigFloat(const mpq_class& value, unsigned bits);
  explicit BigFloat(const mpq_class& value);
  BigFloat(const mpz_class& value, unsigned bits);

  // Decimal or "p/q" literal, rounded to `bits`.
  static BigFloat parse(const std::string& text, unsigned bits);
  static BigFloat pi(unsigned bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  // Copy rounded to a new mantissa size.
  BigFloat with_precision(unsigned bits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  // floor(log2|x|) for nonzero finite x.
  long exponent2() const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // The exact dyadic rational equal to this value.
  mpq_class to_rational() const;
  std::string to_string(int digits = 20) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  friend BigFloat abs(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat floor(const BigFloat& x);
  friend BigFloat pow(const BigFloat& x, long k);

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  explicit BigFloat(unsigned bits, int /*tag*/);
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat pow(const BigFloat& x, long k);

}  // namespace latlab
