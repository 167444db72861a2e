#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "latlab/identity.hpp"

namespace latlab {
namespace {

using test::frac;
using Q = Rational;
using MQ = Matrix<Rational>;

struct Pipeline {
  Jet<Q> jet;
  NilpotentCorrection<Q> B;
  LimitElement<Q> xi;
};

Pipeline moment_pipeline(const Q& s, std::size_t n = 2) {
  const CurveSpec c = builtin_curve("moment", n);
  Jet<Q> j = jet_at<Q>(c, s);
  NilpotentCorrection<Q> b = solve_correction(j);
  LimitElement<Q> xi = limit_element(j, b);
  return {std::move(j), std::move(b), std::move(xi)};
}

TEST(SolveCorrection, MomentAtZeroIsShift) {
  const Pipeline p = moment_pipeline(Q(0));
  EXPECT_EQ(p.B.B, lower_shift<Q>(3));
}

TEST(SolveCorrection, MomentAtOneKillsTopRow) {
  const Pipeline p = moment_pipeline(Q(1));
  const RowVector<Q> top{Q(1), Q(1), Q(1)};
  EXPECT_EQ(top * p.B.B, (RowVector<Q>{0, 0, 0}));
  // Independent check by hand: B = M^-1 S M with M^-1 rows (1,-1,1),(0,1,-2),(0,0,1).
  const MQ M = MQ::from_rows({{Q(1), Q(1), Q(1)}, {0, Q(1), Q(2)}, {0, 0, Q(1)}});
  const MQ Minv = MQ::from_rows({{Q(1), Q(-1), Q(1)}, {0, Q(1), Q(-2)}, {0, 0, Q(1)}});
  EXPECT_EQ(p.B.B, Minv * lower_shift<Q>(3) * M);
}

TEST(SolveCorrection, DegenerateJetThrows) {
  const Jet<Q> j = jet_at<Q>(builtin_curve("affine", 2), Q(0));
  try {
    solve_correction(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularJet);
  }
}

TEST(CorrectionPolynomial, Examples) {
  const Pipeline p = moment_pipeline(Q(0));
  EXPECT_EQ(correction_polynomial(p.B, Q(0)), MQ::identity(3));
  EXPECT_EQ(correction_polynomial(p.B, Q(10)),
            MQ::from_rows({{Q(1), 0, 0}, {Q(10), Q(1), 0}, {Q(100), Q(10), Q(1)}}));
}

TEST(LimitElement, MomentAtZero) {
  const Pipeline p = moment_pipeline(Q(0));
  EXPECT_EQ(p.xi.xi1, (RowVector<Q>{0, 0, Q(1)}));
  EXPECT_EQ(p.xi.xi2, MQ::from_rows({{Q(-1), 0, 0}, {0, Q(-1), 0}}));
  EXPECT_EQ(p.xi.xi_plus, MQ::from_rows({{0, 0, Q(1)}, {Q(-1), 0, 0}, {0, Q(-1), 0}}));
  EXPECT_EQ(p.xi.xi_minus, MQ::from_rows({{0, 0, Q(1)}, {Q(1), 0, 0}, {0, Q(1), 0}}));
  EXPECT_EQ(p.xi.det_plus, 1);
  EXPECT_EQ(p.xi.det_minus, 1);
}

TEST(LimitElement, NeedsNextRow) {
  const CurveSpec c = builtin_curve("moment", 2);
  const Jet<Q> j = jet_at<Q>(c, Q(0), 2);
  const auto b = solve_correction(j);
  EXPECT_THROW(limit_element(j, b), Error);
}

TEST(IdentityResidual, MomentExactResiduals) {
  const CurveSpec c = builtin_curve("moment", 2);
  const Pipeline p = moment_pipeline(Q(0));
  for (long t : {10L, 100L, 1000L, -10L, -1000L}) {
    const auto r = identity_residual<Q>(c, Q(0), p.B, p.xi, Q(t));
    const Q inv = frac(1, std::labs(t));
    EXPECT_EQ(r.E, MQ::from_rows({{0, 0, 0}, {0, inv, 0}, {0, 0, inv}})) << "t = " << t;
    EXPECT_EQ(r.sup_norm, inv);
    EXPECT_EQ(r.sign, t > 0 ? 1 : -1);
  }
}

TEST(IdentityResidual, OutOfDomain) {
  CurveSpec c = builtin_curve("moment", 2);
  c.domain.lo[0] = Q(-1);
  c.domain.hi[0] = frac(1, 20);
  const Pipeline p = moment_pipeline(Q(0));
  try {
    identity_residual<Q>(c, Q(0), p.B, p.xi, Q(10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfDomain);
  }
  EXPECT_NO_THROW(identity_residual<Q>(c, Q(0), p.B, p.xi, Q(100)));
}

// Polynomial top rows of degree <= n: the top row of E vanishes exactly.
TEST(IdentityResidual, TopRowExactlyZeroForPolynomialCurves) {
  for (const char* text : {"psi = s + s^2, 2*s^2 - s", "psi = s, s^2, s^3"}) {
    const CurveSpec c = parse_curve(text);
    for (const Q& s : {Q(0), frac(1, 3), frac(-5, 2)}) {
      const Jet<Q> j = jet_at<Q>(c, s);
      if (!nondegenerate(j).nondegenerate) continue;
      const auto b = solve_correction(j);
      const auto xi = limit_element(j, b);
      for (long t : {7L, 100L, -50L}) {
        const auto r = identity_residual<Q>(c, s, b, xi, Q(t));
        for (std::size_t k = 0; k < r.E.cols(); ++k) EXPECT_EQ(r.E(0, k), 0);
      }
    }
  }
}

TEST(IdentityResidual, TranscendentalDecays) {
  const CurveSpec c = builtin_curve("transcendental");
  PrecisionScope scope(auto_precision_bits(2, 5));
  const BigFloat s(0);
  const Jet<BigFloat> j = jet_at<BigFloat>(c, s);
  const auto b = solve_correction(j);
  const auto xi = limit_element(j, b);
  std::vector<std::pair<double, double>> pts;
  for (long t : {100L, 1000L, 10000L, 100000L}) {
    const auto r = identity_residual<BigFloat>(c, s, b, xi, BigFloat(t));
    ASSERT_TRUE(r.accurate_bits.has_value());
    EXPECT_GT(*r.accurate_bits, 64.0);
    pts.emplace_back(static_cast<double>(t), r.sup_norm.to_double());
  }
  const DecayFit fit = decay_fit(pts);
  EXPECT_GE(fit.slope, -1.15);
  EXPECT_LE(fit.slope, -0.85);
}

TEST(IdentityResidual, PrecisionExhausted) {
  const CurveSpec c = builtin_curve("transcendental");
  PrecisionScope scope(64);
  const BigFloat s(0);
  const Jet<BigFloat> j = jet_at<BigFloat>(c, s);
  const auto b = solve_correction(j);
  const auto xi = limit_element(j, b);
  try {
    identity_residual<BigFloat>(c, s, b, xi, BigFloat(100000));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionExhausted);
  }
}

TEST(DecayFit, Examples) {
  std::vector<std::pair<double, double>> exact, flat, zero;
  for (double t : {100.0, 1000.0, 10000.0, 100000.0}) {
    exact.emplace_back(t, 1.0 / t);
    flat.emplace_back(t, 0.25);
    zero.emplace_back(t, 0.0);
  }
  EXPECT_NEAR(decay_fit(exact).slope, -1.0, 1e-6);
  EXPECT_NEAR(decay_fit(flat).slope, 0.0, 1e-12);
  try {
    decay_fit(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
  EXPECT_THROW(decay_fit({{1.0, 1.0}, {2.0, 1.0}}), Error);
}

// Random rational jets: uniqueness, nilpotency and det(I - tB) = 1.
TEST(SolveCorrection, RandomJetProperties) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), dim(1, 3);
  int checked = 0;
  while (checked < 30) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    MQ M(n + 1, n + 1);
    M(0, 0) = 1;
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t i = (k == 0 ? 1 : 0); i <= n; ++i) M(k, i) = frac(num(rng), den(rng));
    if (determinant(M) == 0) continue;
    const auto b = solve_correction(M);
    EXPECT_TRUE(is_zero(power(b.B, static_cast<unsigned>(n + 1))));
    EXPECT_FALSE(is_zero(power(b.B, static_cast<unsigned>(n))));
    for (int r = 0; r < 5; ++r) {
      const Q t = frac(num(rng), den(rng));
      MQ m = MQ::identity(n + 1);
      m -= b.B * t;
      EXPECT_EQ(determinant(m), 1);
      EXPECT_EQ(m * correction_polynomial(b, t), MQ::identity(n + 1));
    }
    ++checked;
  }
}

}  // namespace
}  // namespace latlab
