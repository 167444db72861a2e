#pragma once

#include <cstddef>
#include <span>

#include "latlab/matrix.hpp"

namespace latlab {

// a(t) = diag(t^n, t^-1, ..., t^-1) in SL(n+1, R).
template <class T>
struct DiagonalFlow {
  std::size_t n;
  T t;

  DiagonalFlow(std::size_t n_, T t_) : n(n_), t(std::move(t_)) {
    require(n >= 1, ErrorCode::kBadDimensions, "a(t) needs n >= 1");
    require(t > T(0), ErrorCode::kInvalidArgument, "a(t) needs t > 0");
  }

  std::size_t dim() const { return n + 1; }
  T top_factor() const {
    T out(1);
    for (std::size_t k = 0; k < n; ++k) out *= t;
    return out;
  }
  T lower_factor() const { return T(1) / t; }

  Matrix<T> matrix() const {
    Matrix<T> out(dim(), dim());
    out(0, 0) = top_factor();
    for (std::size_t i = 1; i < dim(); ++i) out(i, i) = lower_factor();
    return out;
  }

  // a(t) a(u) = a(t u).
  DiagonalFlow compose(const DiagonalFlow& other) const {
    require(n == other.n, ErrorCode::kDimensionMismatch, "flows of different rank");
    return DiagonalFlow(n, T(t * other.t));
  }
};

// a(t) g: the top row is scaled by t^n and the remaining rows by t^-1.
template <class T>
Matrix<T> flow_apply(const DiagonalFlow<T>& a, const Matrix<T>& g) {
  require(g.square() && g.rows() == a.dim(), ErrorCode::kDimensionMismatch, "a(t) and g dimensions");
  Matrix<T> out = g;
  const T top = a.top_factor();
  const T low = a.lower_factor();
  for (std::size_t j = 0; j < g.cols(); ++j) out(0, j) *= top;
  for (std::size_t i = 1; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) *= low;
  return out;
}

// u(z) = [[1, z], [0, I_n]].
template <class T>
Matrix<T> unipotent(std::span<const T> z) {
  Matrix<T> out = Matrix<T>::identity(z.size() + 1);
  for (std::size_t j = 0; j < z.size(); ++j) out(0, j + 1) = z[j];
  return out;
}

// u(psi) built from phi = (1, psi): the identity with phi as its top row.
template <class T>
Matrix<T> unipotent_lift(std::span<const T> phi) {
  Matrix<T> out = Matrix<T>::identity(phi.size());
  out.set_row(0, phi);
  return out;
}

template <class T>
Matrix<T> unipotent_lift(const RowVector<T>& phi) {
  return unipotent_lift(std::span<const T>(phi));
}

// Lower shift S: e_0 S = 0 and e_k S = e_{k-1}.
template <class T>
Matrix<T> lower_shift(std::size_t dim) {
  Matrix<T> out(dim, dim);
  for (std::size_t k = 1; k < dim; ++k) out(k, k - 1) = T(1);
  return out;
}

// I_0 g, realized as the top row.
template <class T>
RowVector<T> top_row(const Matrix<T>& g) {
  return g.row_vector(0);
}

// I_n g as the n x (n+1) block of rows 1..n.
template <class T>
Matrix<T> lower_block(const Matrix<T>& g) {
  return g.row_block(1, g.rows() - 1);
}

}  // namespace latlab
