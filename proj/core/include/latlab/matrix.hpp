#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "latlab/error.hpp"
#include "latlab/scalar.hpp"

namespace latlab {

// Row vectors act on matrices from the left: v * g. The k-th row of g is
// e_k * g, so the top row of Phi(s) is phi(s).
template <class T>
using RowVector = std::vector<T>;

// Dense row-major matrix. Square matrices are the common case; rectangular
// blocks appear for tangent frames and the lower n x (n+1) part of limits.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix out(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == c, ErrorCode::kDimensionMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (const auto& v : row) out(i, j++) = v;
      ++i;
    }
    return out;
  }

  static Matrix from_row_vectors(const std::vector<RowVector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix out(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      require(rows[i].size() == c, ErrorCode::kDimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < c; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  RowVector<T> row_vector(std::size_t i) const { return RowVector<T>(row(i).begin(), row(i).end()); }

  void set_row(std::size_t i, std::span<const T> values) {
    require(values.size() == cols_, ErrorCode::kDimensionMismatch, "row length");
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

  // Rows [first, first + count).
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix out(count, cols_);
    for (std::size_t i = 0; i < count; ++i) out.set_row(i, row(first + i));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix& operator+=(const Matrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorCode::kDimensionMismatch, "matrix product shapes");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_exact_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  static bool is_exact_zero(const T& v) { return v == T(0); }

  void check_same_shape(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::kDimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
RowVector<T> operator*(const RowVector<T>& v, const Matrix<T>& m) {
  require(v.size() == m.rows(), ErrorCode::kDimensionMismatch, "row vector times matrix");
  RowVector<T> out(m.cols(), T(0));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == T(0)) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

template <class T>
T sup_norm(const Matrix<T>& m) {
  T best(0);
  for (const auto& v : m.data()) {
    T a = abs_value(v);
    if (a > best) best = a;
  }
  return best;
}

template <class T>
T sup_norm(std::span<const T> v) {
  T best(0);
  for (const auto& x : v) {
    T a = abs_value(x);
    if (a > best) best = a;
  }
  return best;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, unsigned k) {
  require(m.square(), ErrorCode::kDimensionMismatch, "power of non-square matrix");
  Matrix<T> out = Matrix<T>::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

template <class T>
bool is_zero(const Matrix<T>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const T& v) { return v == T(0); });
}

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<From, Integer>) {
        out(i, j) = To(m(i, j));
      } else if constexpr (std::is_same_v<To, Rational>) {
        out(i, j) = ScalarTraits<From>::to_rational(m(i, j));
      } else {
        out(i, j) = ScalarTraits<To>::from_rational(ScalarTraits<From>::to_rational(m(i, j)));
      }
    }
  return out;
}

// Exact rational copy of a matrix; float entries become their dyadic values.
template <class T>
Matrix<Rational> to_exact(const Matrix<T>& m) {
  return convert<Rational>(m);
}

namespace detail {

// Gauss-Jordan elimination on [a | b]; returns false when a is singular in the
// backend's sense. On success b holds a^{-1} b and det the determinant of a.
template <class T>
bool eliminate(Matrix<T> a, Matrix<T>& b, T& det) {
  const std::size_t n = a.rows();
  det = T(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (ScalarTraits<T>::exact) {
      for (std::size_t r = col; r < n; ++r)
        if (a(r, col) != 0) {
          pivot = r;
          break;
        }
    } else {
      T best(0);
      for (std::size_t r = col; r < n; ++r) {
        T v = abs_value(a(r, col));
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
    }
    if (pivot == n) {
      det = T(0);
      return false;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(pivot, j), b(col, j));
      det = -det;
    }
    const T p = a(col, col);
    det *= p;
    for (std::size_t j = 0; j < n; ++j) a(col, j) /= p;
    for (std::size_t j = 0; j < b.cols(); ++j) b(col, j) /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
    }
  }
  return !ScalarTraits<T>::negligible(det);
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& m) {
  require(m.square(), ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  Matrix<T> none(m.rows(), 0);
  T det(0);
  detail::eliminate(m, none, det);
  return det;
}

// Solves a * x = b for x. Throws SingularMatrix when a is singular (exactly in
// rational mode, |det| <= 2^(-precision/4) in float mode).
template <class T>
Matrix<T> solve(const Matrix<T>& a, Matrix<T> b) {
  require(a.square() && a.rows() == b.rows(), ErrorCode::kDimensionMismatch, "solve shapes");
  T det(0);
  if (!detail::eliminate(a, b, det)) fail(ErrorCode::kSingularMatrix, "matrix is singular");
  return b;
}

template <class T>
Matrix<T> exact_inverse(const Matrix<T>& g) {
  require(g.square(), ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  return solve(g, Matrix<T>::identity(g.rows()));
}

// Rank by row reduction; float entries below 2^(-precision/4) relative to the
// largest entry count as zero.
template <class T>
std::size_t rank(Matrix<T> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  T scale = sup_norm(a);
  if (scale == T(0)) return 0;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = rows;
    T best(0);
    for (std::size_t i = r; i < rows; ++i) {
      T v = abs_value(a(i, col));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (pivot == rows) continue;
    if constexpr (!ScalarTraits<T>::exact) {
      if (ScalarTraits<T>::negligible(T(best / scale))) continue;
    }
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, col) == T(0)) continue;
      const T f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace latlab
