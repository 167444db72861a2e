#include <gtest/gtest.h>

#include "test_support.hpp"
#include "latlab/pyartli.hpp"

namespace latlab {
namespace {

using test::frac;
using Q = Rational;
using MQ = Matrix<Rational>;

GraphForm<Q> graph_at_origin(const CurveSpec& c) {
  const std::vector<Q> s(c.d, Q(0));
  return graph_form_at<Q>(c, std::span<const Q>(s));
}

GraphForm<BigFloat> float_graph_at_origin(const CurveSpec& c) {
  const std::vector<BigFloat> s(c.d, BigFloat(0));
  return graph_form_at<BigFloat>(c, std::span<const BigFloat>(s));
}

MQ quarter_turn() { return MQ::from_rows({{0, Q(-1)}, {Q(1), 0}}); }

// Taylor rows of phi(g gamma(r)) by substituting polynomials in r; valid at
// s = 0 when the tangent frame is e_1..e_d of the coordinate axes, so that
// Psi is the identity in these coordinates.
MQ substituted_rows(const CurveSpec& c, const MQ& g, std::size_t rows) {
  const std::size_t n = c.n, d = c.d;
  std::vector<Polynomial> arg(d, Polynomial(1));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Q> coeffs(n + 1, Q(0));
    coeffs[1] = g(j, 0);
    for (std::size_t i = 2; i <= d; ++i) coeffs[n - d + i] = g(j, i - 1);
    arg[j] = Polynomial::from_coefficients(coeffs);
  }
  MQ out(rows, n + 1);
  out(0, 0) = 1;
  for (std::size_t m = 0; m < n; ++m) {
    const Polynomial z = c.psi[m].evaluate_with<Polynomial>(std::span<const Polynomial>(arg), Polynomial(1),
                                                            [](const Q& q) { return Polynomial::constant(1, q); });
    for (std::size_t k = 0; k < rows; ++k) out(k, m + 1) = z.coefficient({static_cast<unsigned>(k)});
  }
  return out;
}

TEST(GraphForm, MomentCurveAtZero) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("moment", 2));
  EXPECT_EQ(gf.tangent, MQ::from_rows({{0, Q(1), 0}}));
  EXPECT_EQ(gf.complement, MQ::from_rows({{Q(1), 0, 0}, {0, 0, Q(1)}}));
  for (const Q& eta : {frac(3, 7), frac(-2, 1), Q(0)}) {
    const GraphPoint<Q> p = graph_point(gf, std::span<const Q>(&eta, 1));
    EXPECT_EQ(p.residual, 0);
    EXPECT_EQ(p.F, (RowVector<Q>{0, 0, eta * eta}));
  }
}

TEST(GraphForm, AffinePlaneHasZeroF) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("plane2"));
  const std::vector<Q> a{frac(1, 2), frac(-5, 3)};
  const GraphPoint<Q> p = graph_point(gf, std::span<const Q>(a));
  EXPECT_EQ(p.F, (RowVector<Q>{0, 0, 0}));
  EXPECT_EQ(p.residual, 0);
}

TEST(GraphForm, RankDeficient) {
  const CurveSpec c = parse_curve("psi = s^2, s^3");
  try {
    graph_at_origin(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
}

TEST(GraphForm, IrrationalFrameInExactMode) {
  // Dphi(0) = (0, 1, 1) has squared length 2.
  const CurveSpec c = parse_curve("psi = s, s");
  try {
    graph_at_origin(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIrrationalFrame);
  }
  PrecisionScope scope(128);
  const GraphForm<BigFloat> gf = float_graph_at_origin(c);
  EXPECT_NEAR(gf.tangent(0, 1).to_double(), std::sqrt(0.5), 1e-15);
}

// A non-orthogonal Dphi: Gram-Schmidt rows stay rational when the
// normalizers are squares (1 + (4/3)^2 = (5/3)^2). Exact Newton on the
// nonlinear tangent coordinates converges without terminating, and the
// tangent part of F is exactly the remaining residual.
TEST(GraphForm, ExactNewtonAtRationalPoint) {
  const CurveSpec c = parse_curve("d = 2\npsi = s1, s2, s1^2 + s2^2");
  const std::vector<Q> s{frac(2, 3), Q(0)};
  const GraphForm<Q> gf = graph_form_at<Q>(c, std::span<const Q>(s));
  EXPECT_EQ(Matrix<Q>(gf.tangent * gf.tangent.transpose()), MQ::identity(2));
  EXPECT_EQ(gf.normalizers[0], frac(25, 9));
  const std::vector<Q> a{frac(1, 50), frac(1, 30)};
  const GraphPoint<Q> p = graph_point(gf, std::span<const Q>(a), 5);
  EXPECT_GT(p.residual, 0);
  EXPECT_LT(p.residual, Q(pow2_neg(100)));
  const auto parts = gf.split(p.F);
  for (const auto& x : parts.first) EXPECT_LE(abs(x), p.residual);
}

TEST(GraphForm, FloatNewtonRoundTrip) {
  PrecisionScope scope(192);
  const GraphForm<BigFloat> gf = float_graph_at_origin(builtin_curve("twisted2"));
  const std::vector<BigFloat> a{BigFloat(pow2_neg(3)), BigFloat(-1) * BigFloat(pow2_neg(2))};
  const GraphPoint<BigFloat> p = graph_point(gf, std::span<const BigFloat>(a));
  EXPECT_LT(p.residual.to_double(), std::ldexp(1.0, -96));
  const auto parts = gf.split(p.F);
  for (const auto& x : parts.first) EXPECT_LT(std::fabs(x.to_double()), 1e-40);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma<Q>(Q(2), 2, 2), (std::vector<Q>{Q(2), Q(4)}));
  EXPECT_EQ(gamma<Q>(Q(0), 3, 2), (std::vector<Q>{0, 0}));
  EXPECT_EQ(gamma<Q>(frac(1, 2), 3, 2), (std::vector<Q>{frac(1, 2), frac(1, 8)}));
  EXPECT_EQ(gamma<Q>(Q(2), 3, 3), (std::vector<Q>{Q(2), Q(4), Q(8)}));
  for (auto [n, d] : {std::pair{2, 1}, std::pair{2, 3}}) {
    try {
      gamma<Q>(Q(1), n, d);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadDimensions);
    }
  }
}

TEST(Rotations, CayleyAndHaar) {
  EXPECT_EQ(cayley_rotation(MQ::from_rows({{0, Q(1)}, {Q(-1), 0}})), quarter_turn());
  CounterRng rng(5, 0);
  for (std::size_t d : {2u, 3u, 4u}) {
    const MQ g = random_rational_rotation(d, rng);
    EXPECT_NO_THROW(check_rotation(g, d));
  }
  EXPECT_THROW(check_rotation(MQ::from_rows({{Q(1), 0}, {0, Q(-1)}}), 2), Error);
  PrecisionScope scope(128);
  for (std::uint64_t i = 0; i < 10; ++i) {
    CounterRng r(9, i);
    EXPECT_NO_THROW(check_rotation(haar_rotation(3, r), 3));
  }
}

TEST(TwistedJet, FlatGraphIdentity) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("plane2"));
  const Jet<Q> j = twisted_jet(gf, MQ::identity(2));
  EXPECT_EQ(j.rows, MQ::identity(3));
}

TEST(TwistedJet, FlatGraphQuarterTurn) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("plane2"));
  const Jet<Q> j = twisted_jet(gf, quarter_turn());
  EXPECT_EQ(j.rows, MQ::from_rows({{Q(1), 0, 0}, {0, 0, Q(1)}, {0, Q(-1), 0}}));
  EXPECT_EQ(abs(determinant(j.rows)), 1);
}

TEST(TwistedJet, ParaboloidAtIdentity) {
  const CurveSpec c = builtin_curve("paraboloid3");
  const Jet<Q> j = twisted_jet(graph_at_origin(c), MQ::identity(2));
  EXPECT_EQ(j.rows, MQ::from_rows({{Q(1), 0, 0, 0}, {0, Q(1), 0, 0}, {0, 0, 0, Q(1)}, {0, 0, Q(1), 0}}));
  EXPECT_EQ(*j.next_row, (RowVector<Q>{0, 0, 0, 0}));
}

TEST(TwistedJet, MatchesSubstitutionOracle) {
  CounterRng rng(11, 0);
  for (const char* id : {"plane2", "paraboloid3", "saddle3"}) {
    const CurveSpec c = builtin_curve(id);
    const GraphForm<Q> gf = graph_at_origin(c);
    for (int k = 0; k < 10; ++k) {
      const MQ g = random_rational_rotation(2, rng);
      const Jet<Q> j = twisted_jet(gf, g);
      const MQ want = substituted_rows(c, g, c.n + 2);
      EXPECT_EQ(j.rows, want.row_block(0, c.n + 1)) << id;
      EXPECT_EQ(*j.next_row, want.row_vector(c.n + 1)) << id;
    }
  }
}

TEST(TwistedJet, TruncatedGraphJet) {
  const CurveSpec c = builtin_curve("plane2");
  const std::vector<Q> s{Q(0), Q(0)};
  const GraphForm<Q> gf = graph_form_at<Q>(c, std::span<const Q>(s), 2);
  try {
    twisted_jet(gf, MQ::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJetDepthInsufficient);
  }
}

TEST(Twisting, RelationsHoldExactly) {
  CounterRng rng(3, 1);
  for (const char* id : {"plane2", "twisted2", "paraboloid3", "saddle3"}) {
    const GraphForm<Q> gf = graph_at_origin(builtin_curve(id));
    for (int k = 0; k < 12; ++k) {
      const MQ g = random_rational_rotation(2, rng);
      const auto rep = check_twisting(gf, g, twisted_jet(gf, g));
      EXPECT_TRUE(rep.leading_rows_match) << id;
      EXPECT_TRUE(rep.tangent_rows_match) << id;
      EXPECT_TRUE(rep.implication_holds) << id;
    }
  }
}

// F = s1 s2 vanishes along both axes, so rho_{e_1} is degenerate and M(I) is
// singular; the same happens at the quarter turn.
TEST(Twisting, EngineeredDegeneracy) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("saddle3"));
  for (const MQ& g : {MQ::identity(2), quarter_turn()}) {
    const Jet<Q> j = twisted_jet(gf, g);
    const auto rep = check_twisting(gf, g, j);
    EXPECT_FALSE(rep.rho_nondegenerate);
    EXPECT_TRUE(rep.on_locus);
    try {
      twisted_limit(j);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOnDegeneracyLocus);
    }
  }
  // A 3-4-5 rotation is off the locus.
  const MQ g = MQ::from_rows({{frac(3, 5), frac(-4, 5)}, {frac(4, 5), frac(3, 5)}});
  const auto rep = check_twisting(gf, g, twisted_jet(gf, g));
  EXPECT_TRUE(rep.rho_nondegenerate);
  EXPECT_FALSE(rep.on_locus);
}

TEST(TwistedLimit, FlatGraphReducesToShift) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("plane2"));
  const auto lim = twisted_limit(twisted_jet(gf, MQ::identity(2)));
  EXPECT_EQ(lim.correction.B, lower_shift<Q>(3));
  EXPECT_EQ(lim.algebra_dim, 3u);
  EXPECT_TRUE(lim.commuting);
}

TEST(TwistedLimit, AlgebraAndDeterminantOnRandomRotations) {
  CounterRng rng(21, 0);
  for (const char* id : {"twisted2", "paraboloid3"}) {
    const GraphForm<Q> gf = graph_at_origin(builtin_curve(id));
    for (int k = 0; k < 8; ++k) {
      const MQ g = random_rational_rotation(2, rng);
      const Jet<Q> j = twisted_jet(gf, g);
      if (on_degeneracy_locus(j)) continue;
      const auto lim = twisted_limit(j);
      EXPECT_EQ(lim.xi.det_plus, 1);
      EXPECT_EQ(lim.xi.det_minus, 1);
      EXPECT_EQ(lim.algebra_dim, gf.n + 1);
      EXPECT_TRUE(lim.commuting);
      EXPECT_TRUE(is_zero(power(lim.correction.B, static_cast<unsigned>(gf.n + 1))));
      EXPECT_FALSE(is_zero(power(lim.correction.B, static_cast<unsigned>(gf.n))));
    }
  }
}

TEST(TwistedResidual, ExactDecayOnParaboloid) {
  const GraphForm<Q> gf = graph_at_origin(builtin_curve("paraboloid3"));
  const MQ g = MQ::from_rows({{frac(5, 13), frac(-12, 13)}, {frac(12, 13), frac(5, 13)}});
  const auto lim = twisted_limit(twisted_jet(gf, g));
  Q previous;
  for (long t : {10L, 100L, 1000L, 10000L}) {
    const auto r = twisted_residual<Q>(gf, g, lim, Q(t));
    const Q scaled = r.sup_norm * t;
    if (t > 10) EXPECT_LT(scaled, previous * frac(11, 10));
    EXPECT_LT(scaled, Q(100));
    previous = scaled;
  }
  const auto neg = twisted_residual<Q>(gf, g, lim, Q(-1000));
  EXPECT_LT(neg.sup_norm, frac(1, 10));
}

TEST(TwistedResidual, FloatDecayOnNonlinearGraph) {
  PrecisionScope scope(256);
  const GraphForm<BigFloat> gf = float_graph_at_origin(builtin_curve("twisted2"));
  CounterRng rng(4, 0);
  const Matrix<BigFloat> g = haar_rotation(2, rng);
  const auto lim = twisted_limit(twisted_jet(gf, g));
  std::vector<std::pair<double, double>> pts;
  for (long t : {100L, 1000L, 10000L, 100000L}) {
    const auto r = twisted_residual<BigFloat>(gf, g, lim, BigFloat(t));
    pts.emplace_back(static_cast<double>(t), r.sup_norm.to_double());
  }
  const DecayFit fit = decay_fit(pts);
  EXPECT_GE(fit.slope, -1.15);
  EXPECT_LE(fit.slope, -0.85);
}

TEST(DegeneracyProbe, FlatGraphNeverDegenerates) {
  PrecisionScope scope(128);
  const GraphForm<BigFloat> gf = float_graph_at_origin(builtin_curve("plane2"));
  const ProbeReport rep = degeneracy_probe(gf, 100, 42);
  EXPECT_EQ(rep.hits, 0u);
  EXPECT_EQ(rep.fraction, 0.0);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(std::fabs(row.det_Mg.to_double()), 1.0, 1e-30);
    ASSERT_TRUE(row.det_xi.has_value());
    EXPECT_NEAR(row.det_xi->to_double(), 1.0, 1e-30);
  }
}

TEST(DegeneracyProbe, EngineeredLocusHitAtIdentity) {
  PrecisionScope scope(128);
  const GraphForm<BigFloat> gf = float_graph_at_origin(builtin_curve("saddle3"));
  EXPECT_TRUE(probe_rotation(gf, Matrix<BigFloat>::identity(2), 1, 0).in_Zs);
  EXPECT_EQ(degeneracy_probe(gf, 50, 7).hits, 0u);
}

TEST(DegeneracyProbe, Reproducible) {
  PrecisionScope scope(128);
  const GraphForm<BigFloat> gf = float_graph_at_origin(builtin_curve("paraboloid3"));
  const auto a = degeneracy_probe(gf, 1, 99);
  const auto b = degeneracy_probe(gf, 1, 99);
  EXPECT_EQ(a.rows[0].det_Mg, b.rows[0].det_Mg);
  EXPECT_EQ(probe_sample(gf, 99, 0).det_Mg, a.rows[0].det_Mg);
}

TEST(PolarMap, Examples) {
  EXPECT_EQ(polar_map<Q>(Q(10), MQ::identity(2), Q(2), 2, 2), (std::vector<Q>{Q(2), frac(2, 5)}));
  const auto far = polar_map<Q>(Q(1000000), quarter_turn(), Q(1), 3, 2);
  EXPECT_EQ(far[1], 1);
  EXPECT_LT(abs(far[0]), frac(1, 100000));
  EXPECT_THROW(polar_map<Q>(frac(1, 2), MQ::identity(2), Q(1), 2, 2), Error);
}

TEST(PolarMap, UnitBallRadialExtent) {
  PrecisionScope scope(128);
  const ConvexMembership ball = [](const std::vector<BigFloat>& x) {
    BigFloat s(0);
    for (const auto& v : x) s += v * v;
    return !(s > BigFloat(1));
  };
  const BigFloat tol(pow2_neg(40));
  for (std::uint64_t i = 0; i < 5; ++i) {
    CounterRng rng(13, i);
    const Matrix<BigFloat> g = haar_rotation(2, rng);
    const double rg = radial_extent(ball, std::nullopt, g, 2, 2, tol).to_double();
    EXPECT_NEAR(rg, 1.0, 1e-10);
    double c_max = 0;
    for (long t : {10L, 100L, 1000L}) {
      const double rgt = radial_extent(ball, BigFloat(t), g, 2, 2, tol).to_double();
      c_max = std::max(c_max, std::fabs(rgt - rg) * static_cast<double>(t));
    }
    EXPECT_LE(c_max, 10.0);
  }
}

}  // namespace
}  // namespace latlab
