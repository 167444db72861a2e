#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "latlab/flow.hpp"
#include "latlab/lll.hpp"
#include "latlab/matrix.hpp"

namespace latlab {
namespace {

using test::frac;

using Q = Rational;
using MQ = Matrix<Rational>;

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("7/12"), frac(7, 12));
  EXPECT_EQ(parse_rational("-4/6"), frac(-2, 3));
  EXPECT_EQ(parse_rational("0.125"), frac(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), frac(1, 1000));
  EXPECT_EQ(parse_rational("-2.5E2"), Q(-250));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  // Stored in lowest terms with positive denominator.
  const Q q = make_rational(Integer(6), Integer(-4));
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
}

TEST(Rational, RoundingHelpers) {
  EXPECT_EQ(floor_integer(frac(-1, 2)), -1);
  EXPECT_EQ(ceil_integer(frac(-1, 2)), 0);
  EXPECT_EQ(round_integer(frac(1, 2)), 1);
  EXPECT_EQ(round_integer(frac(-1, 2)), 0);
  EXPECT_EQ(round_integer(frac(7, 3)), 2);
}

TEST(BigFloat, PromotesToLargerPrecision) {
  const BigFloat a(frac(1, 3), 64);
  const BigFloat b(frac(1, 3), 200);
  EXPECT_EQ((a + b).precision(), 200u);
  EXPECT_EQ((b * a).precision(), 200u);
  PrecisionScope scope(96);
  EXPECT_EQ(BigFloat(5).precision(), 96u);
}

TEST(BigFloat, ToRationalIsExact) {
  const BigFloat x(0.375, 53u);
  EXPECT_EQ(x.to_rational(), frac(3, 8));
  const BigFloat third(frac(1, 3), 100);
  const Q r = third.to_rational();
  EXPECT_LT(abs(r - frac(1, 3)), pow2_neg(100));
  EXPECT_EQ(BigFloat(r, 100), third);
}

TEST(BigFloat, NegligibleUsesQuarterPrecision) {
  const BigFloat tiny(pow2_neg(40), 128);
  const BigFloat small(pow2_neg(20), 128);
  EXPECT_TRUE(ScalarTraits<BigFloat>::negligible(tiny));
  EXPECT_FALSE(ScalarTraits<BigFloat>::negligible(small));
}

TEST(AutoPrecision, FormulaMatchesContract) {
  // ceil(3.33 * 4 * 5) + 64 = 67 + 64
  EXPECT_EQ(auto_precision_bits(2, 5), 131u);
  EXPECT_EQ(auto_precision_bits(1, 3), 94u);
}

TEST(FlowApply, IdentityInput) {
  const DiagonalFlow<Q> a(2, Q(10));
  EXPECT_EQ(flow_apply(a, MQ::identity(3)),
            MQ::from_rows({{Q(100), 0, 0}, {0, frac(1, 10), 0}, {0, 0, frac(1, 10)}}));
}

TEST(FlowApply, UnitFlowIsIdentity) {
  const DiagonalFlow<Q> a(1, Q(1));
  const MQ g = MQ::from_rows({{Q(2), Q(3)}, {Q(5), frac(7, 2)}});
  EXPECT_EQ(flow_apply(a, g), g);
}

TEST(FlowApply, ScalesRowsOfUnipotent) {
  const std::vector<Q> z{frac(1, 10), frac(1, 100)};
  const MQ g = unipotent<Q>(z);
  EXPECT_EQ(flow_apply(DiagonalFlow<Q>(2, Q(10)), g),
            MQ::from_rows({{Q(100), Q(10), Q(1)}, {0, frac(1, 10), 0}, {0, 0, frac(1, 10)}}));
}

TEST(FlowApply, DimensionMismatch) {
  EXPECT_THROW(flow_apply(DiagonalFlow<Q>(2, Q(10)), MQ::identity(2)), Error);
}

TEST(FlowApply, GroupLaw) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 40), den(1, 9), entry(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const Q t = frac(num(rng), den(rng)), u = frac(num(rng), den(rng));
    MQ g(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = frac(entry(rng), den(rng));
    const DiagonalFlow<Q> at(2, t), au(2, u);
    EXPECT_EQ(flow_apply(at, flow_apply(au, g)), flow_apply(at.compose(au), g));
    EXPECT_EQ(determinant(at.matrix()), 1);
  }
}

TEST(ExactInverse, Examples) {
  EXPECT_EQ(exact_inverse(MQ::identity(3)), MQ::identity(3));
  EXPECT_EQ(exact_inverse(MQ::from_rows({{Q(1), Q(1)}, {0, Q(1)}})), MQ::from_rows({{Q(1), Q(-1)}, {0, Q(1)}}));
  EXPECT_EQ(exact_inverse(MQ::from_rows({{Q(1), Q(1), Q(1)}, {0, Q(1), Q(2)}, {0, 0, Q(1)}})),
            MQ::from_rows({{Q(1), Q(-1), Q(1)}, {0, Q(1), Q(-2)}, {0, 0, Q(1)}}));
}

TEST(ExactInverse, SingularThrows) {
  try {
    exact_inverse(MQ::from_rows({{Q(1), Q(2)}, {Q(2), Q(4)}}));
    FAIL() << "expected SingularMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularMatrix);
  }
}

TEST(ExactInverse, DeterminantProductIsOne) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-20, 20), den(1, 7);
  int checked = 0;
  while (checked < 25) {
    MQ g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g(i, j) = frac(entry(rng), den(rng));
    if (determinant(g) == 0) continue;
    const MQ inv = exact_inverse(g);
    EXPECT_EQ(determinant(inv) * determinant(g), 1);
    EXPECT_EQ(g * inv, MQ::identity(4));
    ++checked;
  }
}

TEST(ExactInverse, FloatResidualWithinHalfPrecision) {
  PrecisionScope scope(160);
  Matrix<BigFloat> g(3, 3);
  const int vals[3][3] = {{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = BigFloat(vals[i][j]) / BigFloat(7);
  const Matrix<BigFloat> r = g * exact_inverse(g) - Matrix<BigFloat>::identity(3);
  EXPECT_TRUE(ScalarTraits<BigFloat>::negligible(sup_norm(r), 2));
}

TEST(ReduceBasis, IdentityIsFixed) {
  const ReducedBasis r = reduce_basis(MQ::identity(3));
  EXPECT_EQ(r.basis, MQ::identity(3));
  EXPECT_EQ(r.swaps, 0u);
}

TEST(ReduceBasis, ShearedIntegerLattice) {
  const MQ b = MQ::from_rows({{Q(1), 0}, {Q(100), Q(1)}});
  const ReducedBasis r = reduce_basis(b);
  EXPECT_LE(sup_norm(r.basis), 1);
  EXPECT_EQ(abs(determinant(r.basis)), 1);
}

TEST(ReduceBasis, DiagonalIsGaussFixedPoint) {
  const MQ b = MQ::from_rows({{Q(4), 0}, {0, frac(1, 4)}});
  const ReducedBasis r = reduce_basis(b);
  // LLL orders by Gram-Schmidt length; the lattice and the two vectors are kept.
  EXPECT_TRUE(is_lll_reduced(r.basis));
  EXPECT_EQ(abs(determinant(r.basis)), 1);
  EXPECT_EQ(abs(r.basis(0, 0)) + abs(r.basis(1, 0)), 4);
  EXPECT_EQ(abs(r.basis(0, 1)) + abs(r.basis(1, 1)), frac(1, 4));
}

TEST(ReduceBasis, SingularThrows) {
  EXPECT_THROW(reduce_basis(MQ::from_rows({{Q(1), Q(2)}, {Q(2), Q(4)}})), Error);
}

// Property: the change of basis is integral and unimodular, maps input to
// output, and the output satisfies the LLL conditions.
TEST(ReduceBasis, PreservesLatticeOnRandomBases) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> entry(-50, 50), den(1, 9), dim(2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = static_cast<std::size_t>(dim(rng));
    MQ b(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b(i, j) = frac(entry(rng), den(rng));
    if (determinant(b) == 0) continue;
    const ReducedBasis r = reduce_basis(b);
    EXPECT_TRUE(is_lll_reduced(r.basis));
    EXPECT_EQ(abs(determinant(convert<Rational>(r.transform))), 1);
    EXPECT_EQ(convert<Rational>(r.transform) * b, r.basis);
    EXPECT_EQ(r.basis * r.inverse, MQ::identity(m));
  }
}

TEST(Rank, ExactAndFloat) {
  EXPECT_EQ(rank(MQ::from_rows({{Q(1), 0, 0}, {0, Q(1), 0}, {Q(1), Q(1), 0}})), 2u);
  EXPECT_EQ(rank(MQ::identity(4)), 4u);
  PrecisionScope scope(128);
  Matrix<BigFloat> f(2, 2);
  f(0, 0) = 1;
  f(0, 1) = 2;
  f(1, 0) = BigFloat(1) / BigFloat(3);
  f(1, 1) = BigFloat(2) / BigFloat(3);
  EXPECT_EQ(rank(f), 1u);
}

}  // namespace
}  // namespace latlab
