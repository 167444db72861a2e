#include "latlab/identity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace latlab {

template <Scalar T>
NilpotentCorrection<T> solve_correction(const Matrix<T>& M) {
  require(M.square(), ErrorCode::kDimensionMismatch, "jet matrix must be square");
  const std::size_t dim = M.rows();
  if (ScalarTraits<T>::negligible(determinant(M))) {
    fail(ErrorCode::kSingularJet, "jet matrix is singular: the curve is degenerate at this point");
  }
  const Matrix<T> S = lower_shift<T>(dim);
  Matrix<T> direct = solve(M, S * M);
  const Matrix<T> conjugate = exact_inverse(M) * S * M;
  if constexpr (ScalarTraits<T>::exact) {
    require(direct == conjugate, ErrorCode::kSingularJet, "direct and conjugation forms of B disagree");
  } else {
    const T scale = std::max(T(1), sup_norm(conjugate));
    require(ScalarTraits<T>::negligible(T(sup_norm(Matrix<T>(direct - conjugate)) / scale)),
            ErrorCode::kPrecisionExhausted, "direct and conjugation forms of B disagree beyond tolerance");
  }
  return NilpotentCorrection<T>{std::move(direct), M, dim - 1};
}

template <Scalar T>
NilpotentCorrection<T> solve_correction(const Jet<T>& j) {
  require(j.rows.square(), ErrorCode::kJetDepthInsufficient, "jet must carry rows 0..n");
  return solve_correction(j.rows);
}

template <Scalar T>
Matrix<T> correction_polynomial(const NilpotentCorrection<T>& c, const T& t) {
  const std::size_t dim = c.B.rows();
  Matrix<T> out = Matrix<T>::identity(dim);
  Matrix<T> term = Matrix<T>::identity(dim);
  for (std::size_t k = 1; k <= c.n; ++k) {
    term = term * c.B;
    term *= t;
    out += term;
  }
  return out;
}

template <Scalar T>
LimitElement<T> limit_element(const Jet<T>& j, const NilpotentCorrection<T>& c) {
  require(j.next_row.has_value(), ErrorCode::kJetDepthInsufficient, "limit element needs the (n+1)-jet");
  require(j.rows.rows() == c.n + 1 && j.phi_matrix.rows() == c.n + 1, ErrorCode::kDimensionMismatch,
          "jet and correction dimensions");
  const std::size_t n = c.n;
  LimitElement<T> xi;
  const RowVector<T> next_B = *j.next_row * c.B;
  xi.xi1 = j.rows.row_vector(n);
  for (std::size_t k = 0; k <= n; ++k) xi.xi1[k] -= next_B[k];
  xi.xi2 = -(lower_block(j.phi_matrix) * c.B);

  for (int sigma : {1, -1}) {
    Matrix<T> m(n + 1, n + 1);
    const T top = (n % 2 == 1 && sigma < 0) ? T(-1) : T(1);
    const T low(sigma);
    for (std::size_t k = 0; k <= n; ++k) m(0, k) = top * xi.xi1[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= n; ++k) m(i + 1, k) = low * xi.xi2(i, k);
    const T det = determinant(m);
    if (!ScalarTraits<T>::negligible(T(det - T(1)))) {
      fail(ErrorCode::kNotUnimodular, "det xi(" + std::to_string(sigma) + ") = " + ScalarTraits<T>::to_string(det) +
                                          ", expected 1 (upstream jet error?)");
    }
    if (sigma > 0) {
      xi.xi_plus = std::move(m);
      xi.det_plus = det;
    } else {
      xi.xi_minus = std::move(m);
      xi.det_minus = det;
    }
  }
  return xi;
}

template <Scalar T>
ResidualReport<T> identity_residual(const std::function<Matrix<T>(const T& h)>& curve_at,
                                    const NilpotentCorrection<T>& c, const LimitElement<T>& xi, const T& t) {
  require(!(t == T(0)), ErrorCode::kInvalidArgument, "t must be nonzero");
  const std::size_t dim = c.n + 1;
  const int sign = t > T(0) ? 1 : -1;
  const T abs_t = abs_value(t);
  const T h = T(1) / t;
  const Matrix<T> phi = curve_at(h);
  require(phi.rows() == dim && phi.square(), ErrorCode::kDimensionMismatch, "curve value has wrong size");

  Matrix<T> correction = Matrix<T>::identity(dim);
  correction -= c.B * t;
  const Matrix<T> lifted = flow_apply(DiagonalFlow<T>(c.n, abs_t), phi) * correction;

  ResidualReport<T> report;
  report.t = t;
  report.sign = sign;
  report.E = lifted - xi.at(sign);
  report.sup_norm = sup_norm(report.E);
  if constexpr (!ScalarTraits<T>::exact) {
    report.precision_bits = default_precision();
    for (const auto& v : report.E.data()) report.precision_bits = std::max(report.precision_bits, v.precision());
    // Products of size |t|^n |Phi| |I - tB| cancel down to O(1).
    const double lost = static_cast<double>(c.n) * log2_abs(abs_t) + std::max(0.0, log2_abs(sup_norm(phi))) +
                        std::max(0.0, log2_abs(sup_norm(correction))) + std::log2(static_cast<double>(dim));
    report.accurate_bits = static_cast<double>(report.precision_bits) - lost;
    if (*report.accurate_bits < kMinAccurateBits) {
      fail(ErrorCode::kPrecisionExhausted,
           "t = " + ScalarTraits<T>::to_string(t) + " leaves about " + std::to_string(*report.accurate_bits) +
               " accurate bits at " + std::to_string(report.precision_bits) + "-bit precision");
    }
  }
  return report;
}

template <Scalar T>
ResidualReport<T> identity_residual(const CurveSpec& curve, const T& s, const NilpotentCorrection<T>& c,
                                    const LimitElement<T>& xi, const T& t) {
  const std::function<Matrix<T>(const T&)> at = [&](const T& h) {
    const T point = s + h;
    return evaluate_Phi<T>(curve, std::span<const T>(&point, 1));
  };
  return identity_residual<T>(at, c, xi, t);
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& residuals) {
  require(residuals.size() >= 4, ErrorCode::kInvalidArgument, "decay fit needs at least 4 points");
  const bool all_zero = std::all_of(residuals.begin(), residuals.end(), [](const auto& p) { return p.second == 0.0; });
  if (all_zero) fail(ErrorCode::kDegenerateInput, "exactly zero residual at every t");
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    require(residuals[i].first > 0.0 && residuals[i].second > 0.0, ErrorCode::kInvalidArgument,
            "decay fit needs t > 0 and positive norms");
    if (i > 0) require(residuals[i].first > residuals[i - 1].first, ErrorCode::kInvalidArgument,
                       "decay fit needs strictly increasing t");
  }
  const double m = static_cast<double>(residuals.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> x, y;
  for (const auto& [t, norm] : residuals) {
    x.push_back(std::log(t));
    y.push_back(std::log(norm));
    sx += x.back();
    sy += y.back();
    sxx += x.back() * x.back();
    sxy += x.back() * y.back();
  }
  DecayFit fit;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  for (std::size_t i = 1; i < x.size(); ++i) fit.interval_slopes.push_back((y[i] - y[i - 1]) / (x[i] - x[i - 1]));
  return fit;
}

#define LATLAB_INSTANTIATE(T)                                                                                   \
  template NilpotentCorrection<T> solve_correction<T>(const Matrix<T>&);                                        \
  template NilpotentCorrection<T> solve_correction<T>(const Jet<T>&);                                           \
  template Matrix<T> correction_polynomial<T>(const NilpotentCorrection<T>&, const T&);                         \
  template LimitElement<T> limit_element<T>(const Jet<T>&, const NilpotentCorrection<T>&);                      \
  template ResidualReport<T> identity_residual<T>(const std::function<Matrix<T>(const T&)>&,                   \
                                                  const NilpotentCorrection<T>&, const LimitElement<T>&, const T&); \
  template ResidualReport<T> identity_residual<T>(const CurveSpec&, const T&, const NilpotentCorrection<T>&,    \
                                                  const LimitElement<T>&, const T&);

LATLAB_INSTANTIATE(Rational)
LATLAB_INSTANTIATE(BigFloat)
#undef LATLAB_INSTANTIATE

}  // namespace latlab
