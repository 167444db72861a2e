#include "latlab/lll.hpp"

#include <utility>

namespace latlab {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational out(0);
  for (std::size_t k = 0; k < a.size(); ++k) out += a[k] * b[k];
  return out;
}

struct GramSchmidt {
  Matrix<Rational> mu;
  std::vector<Rational> norm_sq;
};

GramSchmidt gram_schmidt(const Matrix<Rational>& b) {
  const std::size_t m = b.rows();
  GramSchmidt gs{Matrix<Rational>(m, m), std::vector<Rational>(m)};
  std::vector<RowVector<Rational>> star(m);
  for (std::size_t i = 0; i < m; ++i) {
    star[i] = b.row_vector(i);
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu(i, j) = dot(b.row(i), star[j]) / gs.norm_sq[j];
      for (std::size_t k = 0; k < b.cols(); ++k) star[i][k] -= gs.mu(i, j) * star[j][k];
    }
    gs.norm_sq[i] = dot(star[i], star[i]);
    if (gs.norm_sq[i] == 0) fail(ErrorCode::kSingularMatrix, "basis rows are linearly dependent");
  }
  return gs;
}

}  // namespace

ReducedBasis reduce_basis(const Matrix<Rational>& input, const Rational& delta) {
  require(input.square() && input.rows() >= 1, ErrorCode::kDimensionMismatch, "basis must be square");
  require(delta > Rational(1, 4) && delta <= 1, ErrorCode::kInvalidArgument, "delta must lie in (1/4, 1]");
  const std::size_t m = input.rows();
  const std::size_t dim = input.cols();

  Matrix<Rational> b = input;
  IntMatrix u = IntMatrix::identity(m);
  GramSchmidt gs = gram_schmidt(b);
  auto& mu = gs.mu;
  auto& bs = gs.norm_sq;
  unsigned swaps = 0;

  // b_k -= q b_l, keeping mu and U consistent.
  auto size_reduce = [&](std::size_t k, std::size_t l) {
    const Integer q = round_integer(mu(k, l));
    if (q == 0) return;
    const Rational qq(q);
    for (std::size_t c = 0; c < dim; ++c) b(k, c) -= qq * b(l, c);
    for (std::size_t c = 0; c < m; ++c) u(k, c) -= q * u(l, c);
    for (std::size_t j = 0; j < l; ++j) mu(k, j) -= qq * mu(l, j);
    mu(k, l) -= qq;
  };

  std::size_t k = 1;
  while (k < m) {
    size_reduce(k, k - 1);
    const Rational lhs = bs[k];
    const Rational rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) * bs[k - 1];
    if (lhs < rhs) {
      // Swap b_k and b_{k-1}; incremental Gram-Schmidt update.
      const Rational m_kk1 = mu(k, k - 1);
      const Rational big = bs[k] + m_kk1 * m_kk1 * bs[k - 1];
      mu(k, k - 1) = m_kk1 * bs[k - 1] / big;
      bs[k] = bs[k - 1] * bs[k] / big;
      bs[k - 1] = big;
      for (std::size_t c = 0; c < dim; ++c) std::swap(b(k, c), b(k - 1, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(u(k, c), u(k - 1, c));
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu(k, j), mu(k - 1, j));
      for (std::size_t i = k + 1; i < m; ++i) {
        const Rational t = mu(i, k);
        mu(i, k) = mu(i, k - 1) - m_kk1 * t;
        mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
      }
      ++swaps;
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
      ++k;
    }
  }

  ReducedBasis out;
  out.inverse = exact_inverse(b);
  out.basis = std::move(b);
  out.transform = std::move(u);
  out.gram_schmidt_sq = std::move(bs);
  out.swaps = swaps;
  return out;
}

bool is_lll_reduced(const Matrix<Rational>& b, const Rational& delta) {
  const GramSchmidt gs = gram_schmidt(b);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu(i, j)) > Rational(1, 2)) return false;
  for (std::size_t k = 1; k < b.rows(); ++k) {
    const Rational m = gs.mu(k, k - 1);
    if (gs.norm_sq[k] < (delta - m * m) * gs.norm_sq[k - 1]) return false;
  }
  return true;
}

}  // namespace latlab
