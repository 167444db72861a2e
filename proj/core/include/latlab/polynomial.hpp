#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latlab/error.hpp"
#include "latlab/scalar.hpp"

namespace latlab {

// Multivariate polynomial with exact rational coefficients in variables
// x_0..x_{vars-1}.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  Polynomial() : vars_(1) {}
  explicit Polynomial(std::size_t vars) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, const Rational& c);
  static Polynomial variable(std::size_t vars, std::size_t index);
  // Univariate c_0 + c_1 x + c_2 x^2 + ...
  static Polynomial from_coefficients(std::span<const Rational> coeffs);

  std::size_t vars() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  Rational coefficient(const Exponents& e) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;
  // p(s + x): the Taylor expansion of p around s.
  Polynomial shifted(std::span<const Rational> s) const;

  // Evaluates with any commutative ring R; `lift` embeds coefficients.
  template <class R, class Lift>
  R evaluate_with(std::span<const R> x, const R& zero, Lift&& lift) const {
    R out = zero;
    std::vector<std::vector<R>> powers(vars_);
    for (const auto& [e, c] : terms_) {
      R term = lift(c);
      for (std::size_t v = 0; v < vars_; ++v) {
        if (e[v] == 0) continue;
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(x[v]);
        while (pw.size() < e[v]) pw.push_back(pw.back() * x[v]);
        term = term * pw[e[v] - 1];
      }
      out = out + term;
    }
    return out;
  }

  template <Scalar T>
  T evaluate(std::span<const T> x) const {
    require(x.size() == vars_, ErrorCode::kDimensionMismatch, "polynomial arity");
    return evaluate_with<T>(x, T(0), [](const Rational& c) { return from_rational<T>(c); });
  }

  // Human-readable form using the given variable names.
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::size_t vars_;
  std::map<Exponents, Rational> terms_;
};

// Parses a polynomial expression such as "s^2 + 3/2*s - 1" or "s1*s2 - (s1 + 1)^3".
// Grammar (docs/curve_grammar.md):
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := factor { ('*'|'/') factor }    division only by constants
//   factor := atom [ '^' unsigned ]
//   atom   := number | name | '(' expr ')'
// `names` lists the admissible variable names in index order.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace latlab
