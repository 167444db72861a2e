#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "latlab/graph.hpp"
#include "latlab/identity.hpp"
#include "latlab/rng.hpp"

namespace latlab {

// Rotations act on tangent coordinates as column vectors: g e_j = sum_i g_ij e_i.

// Throws InvalidArgument unless g is d x d with g^T g = I and det g = 1
// (exactly, or to the module tolerance).
template <Scalar T>
void check_rotation(const Matrix<T>& g, std::size_t d);

// Cayley transform (I - A)(I + A)^-1 of a skew-symmetric A.
Matrix<Rational> cayley_rotation(const Matrix<Rational>& skew);

// Cayley rotation of a skew matrix with entries p/q, |p| <= max_entry,
// 1 <= q <= max_entry.
Matrix<Rational> random_rational_rotation(std::size_t d, CounterRng& rng, long max_entry = 4);

// Haar-distributed rotation: Gram-Schmidt on a Gaussian frame at the current
// precision, first column negated when the determinant comes out -1.
Matrix<BigFloat> haar_rotation(std::size_t d, CounterRng& rng);

// gamma(r) = r e_1 + sum_{i=2}^d r^(n-d+i) e_i, in tangent coordinates.
// Throws BadDimensions unless 2 <= d <= n.
template <Scalar T>
std::vector<T> gamma(const T& r, std::size_t n, std::size_t d);

// Jet at r = 0 of zeta(r) = phi(Psi(g gamma(r))): rows are the matrix M(g),
// next_row holds zeta^(n+1)(0)/(n+1)! and phi_matrix is Phi(s). Throws
// JetDepthInsufficient when the graph form carries F-jets below order n+1.
template <Scalar T>
Jet<T> twisted_jet(const GraphForm<T>& gf, const Matrix<T>& g);

// zeta(r) itself, through a graph point.
template <Scalar T>
RowVector<T> twisted_point(const GraphForm<T>& gf, const Matrix<T>& g, const T& r);

template <Scalar T>
struct TwistingReport {
  // Rows k <= n-d+1 of M(g) agree with the Taylor rows of rho_{g e_1}.
  bool leading_rows_match = false;
  // For 2 <= i <= d, row n-d+i of M(g) is g e_i modulo L + R g e_1. Rows are
  // Taylor coefficients, so the derivative itself is (n-d+i)! g e_i there.
  bool tangent_rows_match = false;
  std::size_t rho_rank = 0;
  bool rho_nondegenerate = false;
  T det_M;
  bool on_locus = false;
  // rho_{g e_1} nondegenerate implies det M(g) != 0.
  bool implication_holds = true;
  Matrix<T> rho_rows;
};

template <Scalar T>
TwistingReport<T> check_twisting(const GraphForm<T>& gf, const Matrix<T>& g, const Jet<T>& jet);

template <Scalar T>
bool on_degeneracy_locus(const Jet<T>& jet) {
  return ScalarTraits<T>::negligible(determinant(jet.rows));
}

template <Scalar T>
struct TwistedLimit {
  NilpotentCorrection<T> correction;
  LimitElement<T> xi;
  // Basis B(g)^0..B(g)^n of the span f(g).
  std::vector<Matrix<T>> algebra;
  std::size_t algebra_dim = 0;
  bool commuting = false;
};

// Throws OnDegeneracyLocus when det M(g) vanishes (within tolerance).
template <Scalar T>
TwistedLimit<T> twisted_limit(const Jet<T>& jet);

// E(t) = a(|t|) Phi(Psi(g gamma(1/t))) (I - t B(g)) - xi_s(g)(sign t). In
// exact mode the graph point has to be reached exactly, otherwise
// PrecisionExhausted is thrown.
template <Scalar T>
ResidualReport<T> twisted_residual(const GraphForm<T>& gf, const Matrix<T>& g, const TwistedLimit<T>& lim, const T& t);

struct ProbeRow {
  std::uint64_t seed = 0;
  std::size_t sample_index = 0;
  BigFloat det_Mg;
  bool in_Zs = false;
  std::optional<BigFloat> det_xi;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  std::size_t hits = 0;
  double fraction = 0.0;
};

// One probe at rotation g.
ProbeRow probe_rotation(const GraphForm<BigFloat>& gf, const Matrix<BigFloat>& g, std::uint64_t seed,
                        std::size_t sample_index);

// Sample i draws its rotation from CounterRng(seed, i).
ProbeRow probe_sample(const GraphForm<BigFloat>& gf, std::uint64_t seed, std::size_t sample_index);

ProbeReport summarize_probe(std::vector<ProbeRow> rows);

ProbeReport degeneracy_probe(const GraphForm<BigFloat>& gf, std::size_t samples, std::uint64_t seed);

// T_t(g, r) = g (r, t^-(n-d+1) r^(n-d+2), ..., t^-(n-1) r^n) in tangent
// coordinates.
template <Scalar T>
std::vector<T> polar_map(const T& t, const Matrix<T>& g, const T& r, std::size_t n, std::size_t d);

// r_{g,t} = sup{r >= 0 : T_t(g, r) in C1} by bisection to width tol, for a
// convex C1 containing 0 given by its membership test; t = nullopt gives the
// limit r_g = sup{r : r g e_1 in C1}. Throws DegenerateInput for unbounded
// directions.
using ConvexMembership = std::function<bool(const std::vector<BigFloat>&)>;
BigFloat radial_extent(const ConvexMembership& inside, const std::optional<BigFloat>& t, const Matrix<BigFloat>& g,
                       std::size_t n, std::size_t d, const BigFloat& tol);

}  // namespace latlab
