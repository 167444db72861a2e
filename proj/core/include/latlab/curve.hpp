#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latlab/bigfloat.hpp"
#include "latlab/matrix.hpp"
#include "latlab/polynomial.hpp"

namespace latlab {

// Open coordinate box; an unset bound is infinite.
struct Domain {
  std::vector<std::optional<Rational>> lo;
  std::vector<std::optional<Rational>> hi;

  static Domain whole(std::size_t d) { return Domain{std::vector<std::optional<Rational>>(d), std::vector<std::optional<Rational>>(d)}; }

  template <Scalar T>
  bool contains(std::span<const T> s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (lo[i] && !(s[i] > from_rational<T>(*lo[i]))) return false;
      if (hi[i] && !(s[i] < from_rational<T>(*hi[i]))) return false;
    }
    return true;
  }
};

// Taylor coefficients psi^(k)(s)/k! for k = 0..order of a non-polynomial
// curve of one variable.
using AnalyticTaylor = std::function<std::vector<RowVector<BigFloat>>(const BigFloat& s, std::size_t order)>;

// A map Phi: Omega -> SL(n+1, R) given through its top row phi = (1, psi).
// Polynomial curves carry psi exactly and work with both backends; analytic
// curves (d = 1 only) supply closed-form Taylor data and need the float
// backend. Phi(s) is the unipotent lift u(psi(s)).
struct CurveSpec {
  std::string id;
  std::size_t d = 1;
  std::size_t n = 1;
  std::vector<Polynomial> psi;
  AnalyticTaylor analytic;
  Domain domain = Domain::whole(1);

  bool polynomial() const { return !psi.empty(); }
  std::size_t dim() const { return n + 1; }
  // Variable names used in text form: "s" when d = 1, "s1".."sd" otherwise.
  std::vector<std::string> variable_names() const;
  std::string describe() const;
};

template <Scalar T>
bool in_domain(const CurveSpec& c, std::span<const T> s);

// phi(s) = (1, psi(s)).
template <Scalar T>
RowVector<T> evaluate_phi(const CurveSpec& c, std::span<const T> s);

// Phi(s); the top row is phi(s).
template <Scalar T>
Matrix<T> evaluate_Phi(const CurveSpec& c, std::span<const T> s);

// Rows d_i phi(s), i = 1..d (a d x (n+1) matrix).
template <Scalar T>
Matrix<T> derivative_matrix(const CurveSpec& c, std::span<const T> s);

template <Scalar T>
struct Jet {
  std::vector<T> base;
  // Row k is phi^(k)(s)/k! (or zeta^(k)(0)/k! for twisted curves).
  Matrix<T> rows;
  // phi^(n+1)(s)/(n+1)! when the jet was taken to order n+1.
  std::optional<RowVector<T>> next_row;
  Matrix<T> phi_matrix;
  // dPhi/ds at s; empty for twisted jets.
  Matrix<T> dphi;

  std::size_t n() const { return rows.cols() - 1; }
  bool complete() const { return rows.rows() == rows.cols() && next_row.has_value(); }
};

// Analytic jet of a d = 1 curve. Rows k = 0..min(order, n) are filled and the
// (n+1)-st coefficient is kept in next_row when order = n + 1.
template <Scalar T>
Jet<T> jet_at(const CurveSpec& c, const T& s, std::size_t order);

template <Scalar T>
Jet<T> jet_at(const CurveSpec& c, const T& s) {
  return jet_at(c, s, c.n + 1);
}

// Plain central differences of step h, rows divided by k!.
std::vector<RowVector<BigFloat>> central_difference_rows(const CurveSpec& c, const BigFloat& s, std::size_t order,
                                                         const BigFloat& h);

// Central differences with one Richardson step. Throws NumericJetUnstable when
// the estimates from h and h/2 disagree by more than h * max(1, |value|).
Jet<BigFloat> numeric_jet(const CurveSpec& c, const BigFloat& s, std::size_t order, const BigFloat& h);

inline BigFloat default_jet_step() { return BigFloat(pow2_neg(16)); }

template <Scalar T>
struct NondegeneracyCertificate {
  bool nondegenerate = false;
  T det;
  // ||M||_inf * ||M^-1||_inf; +inf when M is singular.
  double condition = 0.0;
};

template <Scalar T>
NondegeneracyCertificate<T> nondegenerate(const Matrix<T>& rows);

template <Scalar T>
NondegeneracyCertificate<T> nondegenerate(const Jet<T>& j) {
  return nondegenerate(j.rows);
}

struct CatalogEntry {
  std::string id;
  std::size_t d;
  // 0 when the curve family accepts any n >= 1.
  std::size_t fixed_n;
  std::string summary;
};

const std::vector<CatalogEntry>& builtin_catalog();

// Builds a catalog curve. n = 0 selects the entry's default (2 for families).
CurveSpec builtin_curve(std::string_view id, std::size_t n = 0);

// Reads the declarative curve description (docs/curve_grammar.md).
CurveSpec parse_curve(std::string_view text);
CurveSpec load_curve_file(const std::string& path);

}  // namespace latlab
