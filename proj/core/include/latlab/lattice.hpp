#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "latlab/lll.hpp"
#include "latlab/matrix.hpp"

namespace latlab {

// Closed axis-parallel box prod_i [lo_i, hi_i].
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  Box(std::vector<Rational> lo_, std::vector<Rational> hi_);
  static Box cube(std::size_t dim, const Rational& half_width);

  std::size_t dim() const { return lo.size(); }
  Rational volume() const;
  bool contains(std::span<const Rational> v) const;
  bool on_boundary(std::span<const Rational> v) const;
  // max_i max(|lo_i|, |hi_i|)
  Rational sup_radius() const;
};

struct EnumerationLimits {
  // Per call cap on enumerated coefficient prefixes.
  std::uint64_t budget = 10'000'000;
};

// Lattice spanned by the rows of an exact basis with |det| = 1. Float group
// elements are admitted through from_group_element(), which checks the
// determinant to 2^(-precision/4) and then keeps the exact dyadic values.
class UnimodularLattice {
 public:
  static UnimodularLattice from_basis(Matrix<Rational> rows);

  // The lattice g Z^(n+1): its generators are the columns of g, stored as rows.
  template <class T>
  static UnimodularLattice from_group_element(const Matrix<T>& g);

  static UnimodularLattice standard(std::size_t dim) {
    return from_basis(Matrix<Rational>::identity(dim));
  }

  std::size_t dim() const { return basis_.rows(); }
  const Matrix<Rational>& basis() const { return basis_; }
  const ReducedBasis& reduced() const { return reduced_; }

 private:
  UnimodularLattice(Matrix<Rational> basis, ReducedBasis reduced)
      : basis_(std::move(basis)), reduced_(std::move(reduced)) {}

  Matrix<Rational> basis_;
  ReducedBasis reduced_;
};

struct BoxCount {
  std::uint64_t count = 0;           // nonzero lattice points in the box
  std::uint64_t boundary_points = 0; // of those, points on the box boundary
  std::uint64_t prefixes = 0;        // enumeration work performed
};

// Visits every nonzero lattice point in `box` (coordinates and the integer
// coefficients w.r.t. the reduced basis).
void enumerate_box(const UnimodularLattice& lattice, const Box& box,
                   const std::function<void(std::span<const Rational>, std::span<const Integer>)>& visit,
                   const EnumerationLimits& limits = {}, BoxCount* stats = nullptr);

BoxCount count_in_box(const UnimodularLattice& lattice, const Box& box, const EnumerationLimits& limits = {});

struct ShortestVector {
  RowVector<Rational> vector;
  Rational length;  // sup norm
};

// Sup-norm shortest nonzero vector. Among ties the sign is normalized so the
// first nonzero coordinate is positive, then the lexicographically smallest
// vector wins.
ShortestVector shortest_vector(const UnimodularLattice& lattice, const EnumerationLimits& limits = {});

extern template UnimodularLattice UnimodularLattice::from_group_element(const Matrix<Rational>&);
extern template UnimodularLattice UnimodularLattice::from_group_element(const Matrix<BigFloat>&);

}  // namespace latlab
