#include "latlab/graph.hpp"

#include <algorithm>

namespace latlab {
namespace {

template <Scalar T>
T dot(const RowVector<T>& a, const RowVector<T>& b) {
  T out(0);
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// Subtracts the components of v along the mutually orthogonal rows `basis`
// whose squared lengths are `norms`.
template <Scalar T>
RowVector<T> reject(RowVector<T> v, const std::vector<RowVector<T>>& basis, const std::vector<T>& norms) {
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const T c = dot(v, basis[j]) / norms[j];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * basis[j][k];
  }
  return v;
}

template <Scalar T>
bool vanishes(const RowVector<T>& v, const T& scale) {
  T m(0);
  for (const auto& x : v) m = std::max(m, abs_value(x));
  if constexpr (ScalarTraits<T>::exact) {
    return m == T(0);
  } else {
    return ScalarTraits<T>::negligible(T(m / std::max(T(1), scale)));
  }
}

Rational frame_sqrt(const Rational& x) {
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  if (sgn(num) > 0 && mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    return make_rational(Integer(sqrt(num)), Integer(sqrt(den)));
  }
  fail(ErrorCode::kIrrationalFrame, "tangent frame normalizer " + x.get_str() +
                                        " is not a rational square; use the float backend for this point");
}

BigFloat frame_sqrt(const BigFloat& x) { return sqrt(x); }

template <Scalar T>
Matrix<T> tangent_jacobian(const GraphForm<T>& gf, const Matrix<T>& D) {
  Matrix<T> J(gf.d, gf.d);
  for (std::size_t i = 0; i < gf.d; ++i) {
    const auto coords = gf.split(D.row_vector(i)).first;
    for (std::size_t j = 0; j < gf.d; ++j) J(j, i) = coords[j];
  }
  return J;
}

template <Scalar T>
std::vector<T> apply(const Matrix<T>& m, std::span<const T> x) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

}  // namespace

template <Scalar T>
std::pair<std::vector<T>, std::vector<T>> GraphForm<T>::split(const RowVector<T>& v) const {
  const RowVector<T> c = v * frame_inverse;
  return {std::vector<T>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d)),
          std::vector<T>(c.begin() + static_cast<std::ptrdiff_t>(d), c.end())};
}

template <Scalar T>
RowVector<T> GraphForm<T>::tangent_vector(std::span<const T> a) const {
  RowVector<T> out(n + 1, T(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k <= n; ++k) out[k] += a[i] * tangent(i, k);
  return out;
}

template <Scalar T>
GraphForm<T> graph_form_at(const CurveSpec& c, std::span<const T> s, std::size_t jet_order) {
  require(c.polynomial(), ErrorCode::kInvalidArgument, "graph form needs a polynomial curve");
  require(s.size() == c.d, ErrorCode::kDimensionMismatch, "base point has wrong dimension");
  require(in_domain<T>(c, s), ErrorCode::kOutOfDomain, "base point outside the curve domain");
  GraphForm<T> gf;
  gf.curve = c;
  gf.s.assign(s.begin(), s.end());
  gf.n = c.n;
  gf.d = c.d;
  gf.jet_order = jet_order;
  gf.phi_s = evaluate_phi<T>(c, s);
  const Matrix<T> D = derivative_matrix<T>(c, s);
  if (rank(D) < c.d) fail(ErrorCode::kRankDeficient, "Dphi(s) has rank below d = " + std::to_string(c.d));

  const std::size_t dim = c.n + 1;
  std::vector<RowVector<T>> ortho;
  std::vector<T> norms;
  const T scale = std::max(T(1), sup_norm(D));
  for (std::size_t i = 0; i < c.d; ++i) {
    RowVector<T> u = reject(D.row_vector(i), ortho, norms);
    ortho.push_back(u);
    norms.push_back(dot(u, u));
  }
  gf.tangent_raw = Matrix<T>::from_row_vectors(ortho);
  gf.normalizers = norms;
  gf.tangent = Matrix<T>(c.d, dim);
  for (std::size_t i = 0; i < c.d; ++i) {
    const T root = frame_sqrt(norms[i]);
    for (std::size_t k = 0; k < dim; ++k) gf.tangent(i, k) = ortho[i][k] / root;
  }

  const RowVector<T> w = reject(gf.phi_s, ortho, norms);
  if (vanishes(w, std::max(T(1), sup_norm(std::span<const T>(gf.phi_s))))) {
    fail(ErrorCode::kDegenerateInput, "phi(s) lies in the tangent space");
  }
  ortho.push_back(w);
  norms.push_back(dot(w, w));
  std::vector<RowVector<T>> comp{gf.phi_s};
  for (std::size_t k = 0; k < dim && comp.size() < dim - c.d; ++k) {
    RowVector<T> e(dim, T(0));
    e[k] = T(1);
    RowVector<T> v = reject(e, ortho, norms);
    if (vanishes(v, scale)) continue;
    ortho.push_back(v);
    norms.push_back(dot(v, v));
    comp.push_back(v);
  }
  gf.complement = Matrix<T>::from_row_vectors(comp);

  Matrix<T> W(dim, dim);
  for (std::size_t i = 0; i < c.d; ++i) W.set_row(i, gf.tangent.row(i));
  for (std::size_t i = 0; i < comp.size(); ++i) W.set_row(c.d + i, comp[i]);
  gf.frame_inverse = exact_inverse(W);
  gf.jacobian_inverse = exact_inverse(tangent_jacobian(gf, D));
  return gf;
}

template <Scalar T>
GraphPoint<T> graph_point(const GraphForm<T>& gf, std::span<const T> a, unsigned max_iter) {
  require(a.size() == gf.d, ErrorCode::kDimensionMismatch, "tangent coordinates have wrong dimension");
  if (max_iter == 0) max_iter = ScalarTraits<T>::exact ? 4 : 200;
  GraphPoint<T> out;
  out.sigma = gf.s;
  const auto step0 = apply(gf.jacobian_inverse, a);
  for (std::size_t i = 0; i < gf.d; ++i) out.sigma[i] += step0[i];
  T scale(1);
  for (const auto& x : a) scale = std::max(scale, abs_value(x));

  for (unsigned iter = 0;; ++iter) {
    require(in_domain<T>(gf.curve, out.sigma), ErrorCode::kOutOfDomain, "Newton iterate left the curve domain");
    out.phi = evaluate_phi<T>(gf.curve, out.sigma);
    RowVector<T> diff = out.phi;
    for (std::size_t k = 0; k <= gf.n; ++k) diff[k] -= gf.phi_s[k];
    std::vector<T> r = gf.split(diff).first;
    out.residual = T(0);
    for (std::size_t j = 0; j < gf.d; ++j) {
      r[j] -= a[j];
      out.residual = std::max(out.residual, abs_value(r[j]));
    }
    out.iterations = iter;
    bool done;
    if constexpr (ScalarTraits<T>::exact) {
      done = out.residual == T(0) || iter == max_iter;
    } else {
      const int bits = static_cast<int>(default_precision()) - 16;
      done = !(out.residual > scale * T(pow2_neg(static_cast<unsigned>(std::max(bits, 1)))));
      if (!done && iter == max_iter) fail(ErrorCode::kPrecisionExhausted, "graph Newton iteration did not converge");
    }
    if (done) break;
    const Matrix<T> J = tangent_jacobian(gf, derivative_matrix<T>(gf.curve, out.sigma));
    Matrix<T> rhs(gf.d, 1);
    for (std::size_t j = 0; j < gf.d; ++j) rhs(j, 0) = r[j];
    const Matrix<T> step = solve(J, rhs);
    for (std::size_t i = 0; i < gf.d; ++i) out.sigma[i] -= step(i, 0);
  }
  out.F = out.phi;
  const RowVector<T> eta = gf.tangent_vector(a);
  for (std::size_t k = 0; k <= gf.n; ++k) out.F[k] -= gf.phi_s[k] + eta[k];
  return out;
}

namespace {

template <Scalar T>
std::vector<Series<T>> phi_series(const CurveSpec& c, const std::vector<Series<T>>& sigma) {
  const std::size_t order = sigma[0].order();
  std::vector<Series<T>> out;
  out.push_back(Series<T>::constant(order, T(1)));
  for (const auto& p : c.psi) {
    out.push_back(p.evaluate_with<Series<T>>(std::span<const Series<T>>(sigma), Series<T>(order),
                                             [&](const Rational& q) { return Series<T>::constant(order, from_rational<T>(q)); }));
  }
  return out;
}

}  // namespace

template <Scalar T>
std::vector<Series<T>> graph_series(const GraphForm<T>& gf, const std::vector<Series<T>>& path) {
  require(path.size() == gf.d, ErrorCode::kDimensionMismatch, "tangent path has wrong dimension");
  const std::size_t order = path[0].order();
  std::vector<Series<T>> sigma;
  for (std::size_t i = 0; i < gf.d; ++i) {
    require(path[i].order() == order, ErrorCode::kDimensionMismatch, "tangent path orders differ");
    sigma.push_back(Series<T>::constant(order, gf.s[i]));
  }
  // The order-k coefficient of the tangent coordinates is J sigma_k plus terms
  // in sigma_1..sigma_{k-1}.
  for (std::size_t k = 1; k <= order; ++k) {
    const auto vals = phi_series(gf.curve, sigma);
    RowVector<T> coef(gf.n + 1);
    for (std::size_t m = 0; m <= gf.n; ++m) coef[m] = vals[m][k];
    const auto have = gf.split(coef).first;
    std::vector<T> rhs(gf.d);
    for (std::size_t j = 0; j < gf.d; ++j) rhs[j] = path[j][k] - have[j];
    const auto step = apply(gf.jacobian_inverse, std::span<const T>(rhs));
    for (std::size_t i = 0; i < gf.d; ++i) sigma[i][k] = step[i];
  }
  return phi_series(gf.curve, sigma);
}

template <Scalar T>
Matrix<T> line_jet(const GraphForm<T>& gf, std::span<const T> w, std::size_t order) {
  require(w.size() == gf.d, ErrorCode::kDimensionMismatch, "direction has wrong dimension");
  std::vector<Series<T>> path;
  for (std::size_t j = 0; j < gf.d; ++j) {
    Series<T> p(order);
    if (order >= 1) p[1] = w[j];
    path.push_back(p);
  }
  const auto vals = graph_series(gf, path);
  Matrix<T> rows(order + 1, gf.n + 1);
  for (std::size_t k = 0; k <= order; ++k)
    for (std::size_t m = 0; m <= gf.n; ++m) rows(k, m) = vals[m][k];
  return rows;
}

#define LATLAB_INSTANTIATE(T)                                                                        \
  template struct GraphForm<T>;                                                                      \
  template GraphForm<T> graph_form_at<T>(const CurveSpec&, std::span<const T>, std::size_t);        \
  template GraphPoint<T> graph_point<T>(const GraphForm<T>&, std::span<const T>, unsigned);         \
  template std::vector<Series<T>> graph_series<T>(const GraphForm<T>&, const std::vector<Series<T>>&); \
  template Matrix<T> line_jet<T>(const GraphForm<T>&, std::span<const T>, std::size_t);

LATLAB_INSTANTIATE(Rational)
LATLAB_INSTANTIATE(BigFloat)
#undef LATLAB_INSTANTIATE

}  // namespace latlab
