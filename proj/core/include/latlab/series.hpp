#pragma once

#include <cstddef>
#include <vector>

#include "latlab/scalar.hpp"

namespace latlab {

// Univariate power series c_0 + c_1 r + ... truncated after r^order.
template <class T>
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t order) : c_(order + 1, T(0)) {}
  static Series constant(std::size_t order, const T& value) {
    Series s(order);
    s.c_[0] = value;
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  T& operator[](std::size_t k) { return c_[k]; }
  const T& operator[](std::size_t k) const { return c_[k]; }

  Series& operator+=(const Series& rhs) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
    return *this;
  }
  Series& operator-=(const Series& rhs) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b) {
    Series out(a.order());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j < a.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }
  friend Series operator*(const T& s, Series a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

 private:
  std::vector<T> c_;
};

}  // namespace latlab
