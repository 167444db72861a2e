#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "latlab/curve.hpp"
#include "latlab/series.hpp"

namespace latlab {

// The manifold near phi(s) as a graph over its tangent space:
//   phi(Psi(eta)) = phi(s) + eta + F(eta),  eta in T, F(eta) in L.
// T = Dphi(s)(R^d) carries the orthonormal frame e_1..e_d, obtained by
// Gram-Schmidt on the rows of Dphi(s). L is spanned by phi(s) together with
// the part of the orthogonal complement of T that is also orthogonal to the
// T-perpendicular component of phi(s).
template <Scalar T>
struct GraphForm {
  CurveSpec curve;
  std::vector<T> s;
  std::size_t n = 0;
  std::size_t d = 0;
  RowVector<T> phi_s;
  // Orthogonal rows before normalization and their squared lengths; the
  // orthonormal frame is tangent_raw(i) / sqrt(normalizers[i]).
  Matrix<T> tangent_raw;
  std::vector<T> normalizers;
  Matrix<T> tangent;     // d x (n+1), orthonormal rows
  Matrix<T> complement;  // (n+1-d) x (n+1), row 0 is phi(s)
  // Inverse of the matrix stacking tangent over complement; v * frame_inverse
  // gives (tangent coordinates, complement coordinates) of v.
  Matrix<T> frame_inverse;
  // Inverse of J = (tangent coordinates of d_i phi(s))_i, a d x d matrix.
  Matrix<T> jacobian_inverse;
  // Order up to which Taylor data of F along curves is available.
  std::size_t jet_order = 0;

  // Tangent coordinates (first) and complement coordinates (second) of v.
  std::pair<std::vector<T>, std::vector<T>> split(const RowVector<T>& v) const;
  // sum_i a_i e_i.
  RowVector<T> tangent_vector(std::span<const T> a) const;
};

// Throws RankDeficient when Dphi(s) has rank < d, IrrationalFrame in exact
// mode when a frame normalizer is not the square of a rational, and
// InvalidArgument for curves without a polynomial evaluator.
template <Scalar T>
GraphForm<T> graph_form_at(const CurveSpec& c, std::span<const T> s, std::size_t jet_order);

template <Scalar T>
GraphForm<T> graph_form_at(const CurveSpec& c, std::span<const T> s) {
  return graph_form_at(c, s, c.n + 1);
}

template <Scalar T>
struct GraphPoint {
  std::vector<T> sigma;  // Psi(eta)
  RowVector<T> phi;      // phi(Psi(eta))
  RowVector<T> F;
  // Sup norm of the tangent part of phi(sigma) - phi(s) - eta; exactly the
  // round-trip defect phi(Psi(eta)) - phi(s) - eta - F(eta) seen in T.
  T residual;
  unsigned iterations = 0;
};

// Psi(eta) for eta = sum a_i e_i by Newton iteration on the tangent
// coordinates. Exact mode stops at a zero residual or after max_iter steps;
// float mode throws PrecisionExhausted if it fails to converge.
template <Scalar T>
GraphPoint<T> graph_point(const GraphForm<T>& gf, std::span<const T> a, unsigned max_iter = 0);

// phi(Psi(eta(r))) as a power series in r for a tangent path given by its
// coordinate series eta(r) with eta(0) = 0, solved order by order. The series
// order is that of the path.
template <Scalar T>
std::vector<Series<T>> graph_series(const GraphForm<T>& gf, const std::vector<Series<T>>& path);

// rho_w(r) = phi(Psi(r w)) for w in tangent coordinates: rows
// rho_w^(k)(0)/k!, k = 0..order.
template <Scalar T>
Matrix<T> line_jet(const GraphForm<T>& gf, std::span<const T> w, std::size_t order);

}  // namespace latlab
