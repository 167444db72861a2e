#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "latlab/curve.hpp"
#include "latlab/flow.hpp"

namespace latlab {

template <Scalar T>
struct NilpotentCorrection {
  Matrix<T> B;
  Matrix<T> M;
  std::size_t n = 0;
};

// B with e_0 M B = 0 and e_k M B = e_{k-1} M, i.e. M B = S M for the lower
// shift S. Both M^-1 (S M) by elimination and the conjugate M^-1 S M are
// formed and compared. Throws SingularJet when M is singular.
template <Scalar T>
NilpotentCorrection<T> solve_correction(const Jet<T>& j);

template <Scalar T>
NilpotentCorrection<T> solve_correction(const Matrix<T>& M);

// P(t) = I + t B + ... + t^n B^n, the inverse of I - t B.
template <Scalar T>
Matrix<T> correction_polynomial(const NilpotentCorrection<T>& c, const T& t);

template <Scalar T>
struct LimitElement {
  RowVector<T> xi1;
  Matrix<T> xi2;  // n x (n+1)
  Matrix<T> xi_plus;
  Matrix<T> xi_minus;
  T det_plus;
  T det_minus;

  const Matrix<T>& at(int sigma) const { return sigma > 0 ? xi_plus : xi_minus; }
};

// xi1 = M_n - next_row B and xi2 = -(rows 1..n of Phi(s)) B; xi(sigma) has top
// row sigma^n xi1 and lower rows sigma xi2. Throws NotUnimodular when
// det xi(+-1) differs from 1 (exactly, or beyond 2^(-precision/4)).
template <Scalar T>
LimitElement<T> limit_element(const Jet<T>& j, const NilpotentCorrection<T>& c);

template <Scalar T>
struct ResidualReport {
  T t;
  Matrix<T> E;
  T sup_norm;
  int sign = 1;
  Backend backend = ScalarTraits<T>::backend;
  unsigned precision_bits = 0;
  // Bits left after the cancellation; empty for the exact backend.
  std::optional<double> accurate_bits;
};

// Below this many surviving bits a float residual is reported as
// PrecisionExhausted instead of being returned.
inline constexpr double kMinAccurateBits = 24.0;

// E(t) = a(|t|) C(1/t) (I - t B) - xi(sign t) for a curve h -> C(h) through
// C(0) = Phi(s).
template <Scalar T>
ResidualReport<T> identity_residual(const std::function<Matrix<T>(const T& h)>& curve_at,
                                    const NilpotentCorrection<T>& c, const LimitElement<T>& xi, const T& t);

// The same with C(h) = Phi(s + h). Throws OutOfDomain when s + 1/t leaves the
// curve's domain.
template <Scalar T>
ResidualReport<T> identity_residual(const CurveSpec& curve, const T& s, const NilpotentCorrection<T>& c,
                                    const LimitElement<T>& xi, const T& t);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  // Slope between consecutive points.
  std::vector<double> interval_slopes;
};

// Least-squares slope of log ||E(t)|| against log t. Needs at least 4 points
// with strictly increasing t and positive norms; all-zero norms raise
// DegenerateInput ("exactly zero residual").
DecayFit decay_fit(const std::vector<std::pair<double, double>>& residuals);

}  // namespace latlab
