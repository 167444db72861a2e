#pragma once

#include <vector>

#include "latlab/matrix.hpp"

namespace latlab {

using IntMatrix = Matrix<Integer>;

// Output of reduce_basis. `transform` is the integral unimodular U with
// basis = U * input; `gram_schmidt_sq` holds |b_i*|^2, which together with
// `inverse` certifies the coefficient bounds used by box enumeration.
struct ReducedBasis {
  Matrix<Rational> basis;
  IntMatrix transform;
  std::vector<Rational> gram_schmidt_sq;
  Matrix<Rational> inverse;
  unsigned swaps = 0;
};

// LLL reduction of the row basis `b` with exact rational Gram-Schmidt.
// Throws SingularMatrix when the rows are dependent.
ReducedBasis reduce_basis(const Matrix<Rational>& b, const Rational& delta = Rational(3, 4));

// True when `b` satisfies the size condition |mu_ij| <= 1/2 and the Lovasz
// condition for `delta`.
bool is_lll_reduced(const Matrix<Rational>& b, const Rational& delta = Rational(3, 4));

}  // namespace latlab
