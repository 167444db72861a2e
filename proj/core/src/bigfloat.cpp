#include "latlab/bigfloat.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "latlab/error.hpp"

namespace latlab {

namespace {

thread_local unsigned tls_default_precision = 128;

unsigned clamp_bits(unsigned bits) {
  return std::clamp<unsigned>(bits, MPFR_PREC_MIN, 1u << 20);
}

}  // namespace

unsigned default_precision() { return tls_default_precision; }
void set_default_precision(unsigned bits) { tls_default_precision = clamp_bits(bits); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(tls_default_precision) {
  set_default_precision(bits);
}
PrecisionScope::~PrecisionScope() { tls_default_precision = saved_; }

BigFloat::BigFloat(unsigned bits, int) { mpfr_init2(value_, clamp_bits(bits)); }

BigFloat::BigFloat() : BigFloat(default_precision(), 0) { mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(int value) : BigFloat(default_precision(), 0) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value) : BigFloat(default_precision(), 0) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, unsigned bits) : BigFloat(bits, 0) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, unsigned bits) : BigFloat(bits, 0) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value) : BigFloat(value, default_precision()) {}

BigFloat::BigFloat(const mpz_class& value, unsigned bits) : BigFloat(bits, 0) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat BigFloat::parse(const std::string& text, unsigned bits) {
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) fail(ErrorCode::kInvalidArgument, "not a rational literal: " + text);
    q.canonicalize();
    if (q.get_den() == 0) fail(ErrorCode::kInvalidArgument, "zero denominator: " + text);
    return BigFloat(q, bits);
  }
  BigFloat out(bits, 0);
  char* end = nullptr;
  if (mpfr_strtofr(out.value_, text.c_str(), &end, 10, MPFR_RNDN), end == text.c_str() || *end != '\0') {
    fail(ErrorCode::kInvalidArgument, "not a decimal literal: " + text);
  }
  return out;
}

BigFloat BigFloat::pi(unsigned bits) {
  BigFloat out(bits, 0);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.precision(), 0) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::with_precision(unsigned bits) const {
  BigFloat out(bits, 0);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long BigFloat::exponent2() const {
  if (is_zero() || !is_finite()) return 0;
  return mpfr_get_exp(value_) - 1;
}

mpq_class BigFloat::to_rational() const {
  if (!is_finite()) fail(ErrorCode::kInvalidArgument, "non-finite float has no rational value");
  if (is_zero()) return mpq_class(0);
  mpz_class mantissa;
  const long exp = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  mpq_class out(mantissa);
  if (exp >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return out;
}

std::string BigFloat::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

namespace {

// Grows `target` to at least `bits` without changing its value.
void promote(mpfr_t target, unsigned bits) {
  if (mpfr_get_prec(target) < static_cast<mpfr_prec_t>(bits)) {
    mpfr_prec_round(target, bits, MPFR_RNDN);
  }
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  promote(value_, rhs.precision());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  promote(value_, rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  promote(value_, rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  promote(value_, rhs.precision());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define LATLAB_UNARY(name, call)              \
  BigFloat name(const BigFloat& x) {          \
    BigFloat out(x.precision(), 0);           \
    call(out.value_, x.value_, MPFR_RNDN);    \
    return out;                               \
  }

LATLAB_UNARY(abs, mpfr_abs)
LATLAB_UNARY(sqrt, mpfr_sqrt)
LATLAB_UNARY(sin, mpfr_sin)
LATLAB_UNARY(cos, mpfr_cos)
LATLAB_UNARY(exp, mpfr_exp)
LATLAB_UNARY(log, mpfr_log)

#undef LATLAB_UNARY

BigFloat floor(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_floor(out.value_, x.value_);
  return out;
}

BigFloat pow(const BigFloat& x, long k) {
  BigFloat out(x.precision(), 0);
  mpfr_pow_si(out.value_, x.value_, k, MPFR_RNDN);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(); }

}  // namespace latlab
