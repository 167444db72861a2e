#include "latlab/pyartli.hpp"

#include <algorithm>

namespace latlab {
namespace {

template <Scalar T>
T ipow(const T& x, std::size_t k) {
  T out(1);
  for (std::size_t i = 0; i < k; ++i) out *= x;
  return out;
}

template <Scalar T>
bool close(const Matrix<T>& a, const Matrix<T>& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    const T scale = std::max({T(1), sup_norm(a), sup_norm(b)});
    return ScalarTraits<T>::negligible(T(sup_norm(Matrix<T>(a - b)) / scale));
  }
}

template <Scalar T>
std::vector<T> column(const Matrix<T>& g, std::size_t j) {
  std::vector<T> out(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) out[i] = g(i, j);
  return out;
}

void check_dimensions(std::size_t n, std::size_t d) {
  require(d >= 2 && d <= n, ErrorCode::kBadDimensions,
          "twisting needs 2 <= d <= n (got n = " + std::to_string(n) + ", d = " + std::to_string(d) + ")");
}

}  // namespace

template <Scalar T>
void check_rotation(const Matrix<T>& g, std::size_t d) {
  require(g.rows() == d && g.cols() == d, ErrorCode::kDimensionMismatch, "rotation must be d x d");
  const bool orthogonal = close(Matrix<T>(g.transpose() * g), Matrix<T>::identity(d));
  const T det = determinant(g);
  const bool unit = ScalarTraits<T>::negligible(T(det - T(1)));
  require(orthogonal && unit, ErrorCode::kInvalidArgument, "matrix is not a rotation (g^T g = I, det g = 1)");
}

Matrix<Rational> cayley_rotation(const Matrix<Rational>& skew) {
  require(skew.square(), ErrorCode::kDimensionMismatch, "skew matrix must be square");
  require(skew.transpose() == -skew, ErrorCode::kInvalidArgument, "Cayley transform needs a skew-symmetric matrix");
  const std::size_t d = skew.rows();
  const Matrix<Rational> I = Matrix<Rational>::identity(d);
  return (I - skew) * exact_inverse(Matrix<Rational>(I + skew));
}

Matrix<Rational> random_rational_rotation(std::size_t d, CounterRng& rng, long max_entry) {
  require(max_entry >= 1, ErrorCode::kInvalidArgument, "max_entry must be positive");
  Matrix<Rational> A(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const long p = rng.uniform_int(-max_entry, max_entry);
      const long q = rng.uniform_int(1, max_entry);
      A(i, j) = make_rational(Integer(p), Integer(q));
      A(j, i) = -A(i, j);
    }
  return cayley_rotation(A);
}

Matrix<BigFloat> haar_rotation(std::size_t d, CounterRng& rng) {
  require(d >= 1, ErrorCode::kBadDimensions, "rotation dimension must be positive");
  const unsigned prec = default_precision();
  Matrix<BigFloat> g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = BigFloat(rng.gaussian(), prec);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      BigFloat c(0);
      for (std::size_t i = 0; i < d; ++i) c += g(i, j) * g(i, k);
      for (std::size_t i = 0; i < d; ++i) g(i, j) -= c * g(i, k);
    }
    BigFloat norm(0);
    for (std::size_t i = 0; i < d; ++i) norm += g(i, j) * g(i, j);
    norm = sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) g(i, j) /= norm;
  }
  if (determinant(g) < BigFloat(0))
    for (std::size_t i = 0; i < d; ++i) g(i, 0) = -g(i, 0);
  return g;
}

template <Scalar T>
std::vector<T> gamma(const T& r, std::size_t n, std::size_t d) {
  check_dimensions(n, d);
  std::vector<T> out(d);
  out[0] = r;
  for (std::size_t i = 2; i <= d; ++i) out[i - 1] = ipow(r, n - d + i);
  return out;
}

template <Scalar T>
Jet<T> twisted_jet(const GraphForm<T>& gf, const Matrix<T>& g) {
  const std::size_t n = gf.n, d = gf.d;
  check_dimensions(n, d);
  check_rotation(g, d);
  if (gf.jet_order < n + 1) {
    fail(ErrorCode::kJetDepthInsufficient, "graph form carries F-jets to order " + std::to_string(gf.jet_order) +
                                               ", twisting needs " + std::to_string(n + 1));
  }
  const std::size_t order = n + 1;
  std::vector<Series<T>> path;
  for (std::size_t j = 0; j < d; ++j) {
    Series<T> p(order);
    p[1] = g(j, 0);
    for (std::size_t i = 2; i <= d; ++i) p[n - d + i] = g(j, i - 1);
    path.push_back(std::move(p));
  }
  const auto zeta = graph_series(gf, path);
  Jet<T> jet;
  jet.rows = Matrix<T>(n + 1, n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t m = 0; m <= n; ++m) jet.rows(k, m) = zeta[m][k];
  RowVector<T> next(n + 1);
  for (std::size_t m = 0; m <= n; ++m) next[m] = zeta[m][n + 1];
  jet.next_row = std::move(next);
  jet.phi_matrix = evaluate_Phi<T>(gf.curve, std::span<const T>(gf.s));
  return jet;
}

template <Scalar T>
RowVector<T> twisted_point(const GraphForm<T>& gf, const Matrix<T>& g, const T& r) {
  const std::vector<T> u = gamma(r, gf.n, gf.d);
  std::vector<T> a(gf.d, T(0));
  for (std::size_t j = 0; j < gf.d; ++j)
    for (std::size_t i = 0; i < gf.d; ++i) a[j] += g(j, i) * u[i];
  const GraphPoint<T> p = graph_point(gf, std::span<const T>(a));
  if constexpr (ScalarTraits<T>::exact) {
    require(p.residual == T(0), ErrorCode::kPrecisionExhausted,
            "graph point not reachable exactly (nonlinear tangent coordinates); use the float backend");
  }
  return p.phi;
}

template <Scalar T>
TwistingReport<T> check_twisting(const GraphForm<T>& gf, const Matrix<T>& g, const Jet<T>& jet) {
  const std::size_t n = gf.n, d = gf.d;
  check_dimensions(n, d);
  require(jet.rows.rows() == n + 1 && jet.rows.cols() == n + 1, ErrorCode::kDimensionMismatch, "jet size");
  TwistingReport<T> rep;
  const std::vector<T> ge1 = column(g, 0);
  const std::size_t lead = n - d + 1;
  rep.rho_rows = line_jet(gf, std::span<const T>(ge1), lead);
  rep.leading_rows_match = close(jet.rows.row_block(0, lead + 1), rep.rho_rows);

  // L + R g e_1 has dimension n + 2 - d.
  std::vector<RowVector<T>> span_rows;
  for (std::size_t i = 0; i < gf.complement.rows(); ++i) span_rows.push_back(gf.complement.row_vector(i));
  span_rows.push_back(gf.tangent_vector(std::span<const T>(ge1)));
  const std::size_t span_dim = rank(Matrix<T>::from_row_vectors(span_rows));
  rep.tangent_rows_match = span_dim == n + 2 - d;
  for (std::size_t i = 2; i <= d; ++i) {
    RowVector<T> v = jet.rows.row_vector(n - d + i);
    const RowVector<T> gei = gf.tangent_vector(std::span<const T>(column(g, i - 1)));
    for (std::size_t k = 0; k <= n; ++k) v[k] -= gei[k];
    std::vector<RowVector<T>> with = span_rows;
    with.push_back(v);
    if (rank(Matrix<T>::from_row_vectors(with)) != span_dim) rep.tangent_rows_match = false;
  }

  rep.rho_rank = rank(rep.rho_rows);
  rep.rho_nondegenerate = rep.rho_rank == n + 2 - d;
  rep.det_M = determinant(jet.rows);
  rep.on_locus = ScalarTraits<T>::negligible(rep.det_M);
  rep.implication_holds = !rep.rho_nondegenerate || !rep.on_locus;
  return rep;
}

template <Scalar T>
TwistedLimit<T> twisted_limit(const Jet<T>& jet) {
  if (on_degeneracy_locus(jet)) {
    fail(ErrorCode::kOnDegeneracyLocus, "det M(g) = " + ScalarTraits<T>::to_string(determinant(jet.rows)) +
                                            ": g lies on the degeneracy locus Z_s");
  }
  TwistedLimit<T> lim;
  lim.correction = solve_correction(jet);
  lim.xi = limit_element(jet, lim.correction);
  const std::size_t dim = jet.rows.rows();
  Matrix<T> p = Matrix<T>::identity(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    lim.algebra.push_back(p);
    p = p * lim.correction.B;
  }
  Matrix<T> flat(dim, dim * dim);
  for (std::size_t k = 0; k < dim; ++k) flat.set_row(k, lim.algebra[k].data());
  lim.algebra_dim = rank(flat);
  lim.commuting = true;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b)
      if (!close(Matrix<T>(lim.algebra[a] * lim.algebra[b]), Matrix<T>(lim.algebra[b] * lim.algebra[a])))
        lim.commuting = false;
  return lim;
}

template <Scalar T>
ResidualReport<T> twisted_residual(const GraphForm<T>& gf, const Matrix<T>& g, const TwistedLimit<T>& lim,
                                   const T& t) {
  const std::function<Matrix<T>(const T&)> at = [&](const T& h) { return unipotent_lift(twisted_point(gf, g, h)); };
  return identity_residual<T>(at, lim.correction, lim.xi, t);
}

ProbeRow probe_rotation(const GraphForm<BigFloat>& gf, const Matrix<BigFloat>& g, std::uint64_t seed,
                        std::size_t sample_index) {
  ProbeRow row;
  row.seed = seed;
  row.sample_index = sample_index;
  const Jet<BigFloat> jet = twisted_jet(gf, g);
  row.det_Mg = determinant(jet.rows);
  row.in_Zs = ScalarTraits<BigFloat>::negligible(row.det_Mg);
  if (!row.in_Zs) row.det_xi = twisted_limit(jet).xi.det_plus;
  return row;
}

ProbeRow probe_sample(const GraphForm<BigFloat>& gf, std::uint64_t seed, std::size_t sample_index) {
  CounterRng rng(seed, sample_index);
  return probe_rotation(gf, haar_rotation(gf.d, rng), seed, sample_index);
}

ProbeReport summarize_probe(std::vector<ProbeRow> rows) {
  ProbeReport rep;
  rep.rows = std::move(rows);
  for (const auto& r : rep.rows) rep.hits += r.in_Zs ? 1 : 0;
  rep.fraction = rep.rows.empty() ? 0.0 : static_cast<double>(rep.hits) / static_cast<double>(rep.rows.size());
  return rep;
}

ProbeReport degeneracy_probe(const GraphForm<BigFloat>& gf, std::size_t samples, std::uint64_t seed) {
  require(samples >= 1, ErrorCode::kInvalidArgument, "probe needs at least one sample");
  std::vector<ProbeRow> rows;
  rows.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) rows.push_back(probe_sample(gf, seed, i));
  return summarize_probe(std::move(rows));
}

template <Scalar T>
std::vector<T> polar_map(const T& t, const Matrix<T>& g, const T& r, std::size_t n, std::size_t d) {
  check_dimensions(n, d);
  require(!(t < T(1)), ErrorCode::kInvalidArgument, "polar map needs t >= 1");
  std::vector<T> u(d);
  u[0] = r;
  for (std::size_t i = 2; i <= d; ++i) u[i - 1] = ipow(r, n - d + i) / ipow(t, n - d + i - 1);
  std::vector<T> out(d, T(0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) out[j] += g(j, i) * u[i];
  return out;
}

BigFloat radial_extent(const ConvexMembership& inside, const std::optional<BigFloat>& t, const Matrix<BigFloat>& g,
                       std::size_t n, std::size_t d, const BigFloat& tol) {
  require(tol > BigFloat(0), ErrorCode::kInvalidArgument, "tolerance must be positive");
  const auto point = [&](const BigFloat& r) {
    if (t) return polar_map(*t, g, r, n, d);
    std::vector<BigFloat> out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = r * g(j, 0);
    return out;
  };
  require(inside(point(BigFloat(0))), ErrorCode::kInvalidArgument, "convex set must contain 0");
  BigFloat lo(0), hi(1);
  for (int k = 0; inside(point(hi)); ++k) {
    if (k == 64) fail(ErrorCode::kDegenerateInput, "convex set is unbounded along this direction");
    lo = hi;
    hi *= BigFloat(2);
  }
  while (hi - lo > tol) {
    const BigFloat mid = (lo + hi) / BigFloat(2);
    if (inside(point(mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / BigFloat(2);
}

#define LATLAB_INSTANTIATE(T)                                                                                  \
  template void check_rotation<T>(const Matrix<T>&, std::size_t);                                              \
  template std::vector<T> gamma<T>(const T&, std::size_t, std::size_t);                                        \
  template Jet<T> twisted_jet<T>(const GraphForm<T>&, const Matrix<T>&);                                       \
  template RowVector<T> twisted_point<T>(const GraphForm<T>&, const Matrix<T>&, const T&);                     \
  template TwistingReport<T> check_twisting<T>(const GraphForm<T>&, const Matrix<T>&, const Jet<T>&);          \
  template TwistedLimit<T> twisted_limit<T>(const Jet<T>&);                                                    \
  template ResidualReport<T> twisted_residual<T>(const GraphForm<T>&, const Matrix<T>&, const TwistedLimit<T>&, \
                                                 const T&);                                                    \
  template std::vector<T> polar_map<T>(const T&, const Matrix<T>&, const T&, std::size_t, std::size_t);

LATLAB_INSTANTIATE(Rational)
LATLAB_INSTANTIATE(BigFloat)
#undef LATLAB_INSTANTIATE

}  // namespace latlab
