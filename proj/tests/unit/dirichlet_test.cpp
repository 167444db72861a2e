#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "test_support.hpp"
#include "latlab/dirichlet.hpp"
#include "latlab/rng.hpp"

namespace latlab {
namespace {

using test::frac;

DirichletQuery query(std::vector<Rational> z, std::int64_t N, Rational lambda, DirichletMode mode) {
  return DirichletQuery{DirichletTarget::exact(std::move(z)), N, std::move(lambda), mode};
}

Rational distance_to_integer(const Rational& x) {
  const Rational f = x - Rational(floor_integer(x));
  return f < Rational(1, 2) ? f : Rational(1 - f);
}

// Straight from the inequalities: every q in range, exact arithmetic.
bool brute_solvable(const std::vector<Rational>& z, std::int64_t N, const Rational& lambda, DirichletMode mode) {
  const std::size_t n = z.size();
  Rational Nn(1);
  for (std::size_t i = 0; i < n; ++i) Nn *= Rational(static_cast<long>(N));
  const Rational big(static_cast<long>(N));
  if (mode == DirichletMode::kB) {
    for (long q = 1; Rational(q) <= lambda * Nn; ++q) {
      bool ok = true;
      for (const auto& zi : z) ok = ok && distance_to_integer(Rational(q) * zi) <= lambda / big;
      if (ok) return true;
    }
    return false;
  }
  const long Q = floor_integer(Rational(lambda * big)).get_si();
  std::vector<long> q(n, -Q);
  if (Q == 0) return false;
  for (;;) {
    bool zero = true;
    Rational x(0);
    for (std::size_t i = 0; i < n; ++i) {
      zero = zero && q[i] == 0;
      x += Rational(q[i]) * z[i];
    }
    if (!zero && distance_to_integer(x) <= lambda / Nn) return true;
    std::size_t k = n;
    while (k > 0 && q[k - 1] == Q) q[--k] = -Q;
    if (k == 0) return false;
    ++q[k - 1];
  }
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: {  // small denominators make boundary cases common
      std::uniform_int_distribution<long> den(1, 12);
      const long d = den(rng);
      return frac(std::uniform_int_distribution<long>(-2 * d, 2 * d)(rng), d);
    }
    case 1:
      return frac(std::uniform_int_distribution<long>(-100000, 100000)(rng), 65537);
    default:
      return Rational(std::uniform_real_distribution<double>(-2, 2)(rng));
  }
}

Rational random_lambda(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 10);
  const long d = den(rng);
  return frac(std::uniform_int_distribution<long>(1, d)(rng), d);
}

TEST(SolvableDirect, Examples) {
  DirichletResult r = solvable_direct(query({Rational(0)}, 5, Rational(1), DirichletMode::kB));
  ASSERT_TRUE(r.solvable);
  EXPECT_EQ(r.witness->q, std::vector<Integer>{Integer(1)});
  EXPECT_EQ(r.witness->p, std::vector<Integer>{Integer(0)});

  r = solvable_direct(query({frac(2, 7)}, 3, Rational(1), DirichletMode::kB));
  ASSERT_TRUE(r.solvable);
  EXPECT_EQ(r.witness->q, std::vector<Integer>{Integer(1)});
  EXPECT_EQ(r.witness->p, std::vector<Integer>{Integer(0)});

  EXPECT_FALSE(solvable_direct(query({frac(1, 2)}, 2, frac(9, 10), DirichletMode::kB)).solvable);

  // At lambda = 1 the boundary solution q = 1 is found first; the tie between
  // p = 0 and p = 1 goes to 0.
  r = solvable_direct(query({frac(1, 2)}, 2, Rational(1), DirichletMode::kB));
  ASSERT_TRUE(r.solvable);
  EXPECT_EQ(r.witness->q, std::vector<Integer>{Integer(1)});
  EXPECT_EQ(r.witness->p, std::vector<Integer>{Integer(0)});
}

TEST(SolvableDirect, WitnessesSatisfyTheInequalities) {
  std::mt19937_64 rng(5);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 2;
    std::vector<Rational> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(random_rational(rng));
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, 40)(rng);
    const DirichletMode mode = trial % 4 < 2 ? DirichletMode::kA : DirichletMode::kB;
    const Rational lambda = random_lambda(rng);
    const DirichletResult r = solvable_direct(query(z, N, lambda, mode));
    if (!r.solvable) continue;
    ++solved;
    const DirichletWitness& w = *r.witness;
    Rational Nn(1);
    for (std::size_t i = 0; i < n; ++i) Nn *= Rational(static_cast<long>(N));
    if (mode == DirichletMode::kA) {
      Rational x(0), sup(0);
      for (std::size_t i = 0; i < n; ++i) {
        x += Rational(w.q[i]) * z[i];
        sup = std::max(sup, Rational(abs(w.q[i])));
      }
      EXPECT_GT(sup, 0);
      EXPECT_LE(sup, lambda * Rational(static_cast<long>(N)));
      EXPECT_LE(abs(x - Rational(w.p[0])), lambda / Nn);
    } else {
      EXPECT_GT(w.q[0], 0);
      EXPECT_LE(Rational(w.q[0]), lambda * Nn);
      for (std::size_t i = 0; i < n; ++i)
        EXPECT_LE(abs(Rational(w.q[0]) * z[i] - Rational(w.p[i])), lambda / Rational(static_cast<long>(N)));
    }
  }
  EXPECT_GT(solved, 50);
}

TEST(SolvableLattice, Examples) {
  for (std::int64_t N : {1, 2, 7, 40})
    EXPECT_TRUE(solvable_lattice(query({Rational(0)}, N, Rational(1), DirichletMode::kA))) << N;
  EXPECT_FALSE(solvable_lattice(query({frac(1, 2)}, 2, frac(9, 10), DirichletMode::kB)));
  EXPECT_THROW(solvable_lattice(DirichletQuery{DirichletTarget::expressions({"sqrt(2)"}), 3, Rational(1),
                                               DirichletMode::kA}),
               Error);
}

TEST(DaniMatrix, UnimodularWithTheStatedPoints) {
  const std::vector<Rational> z{frac(1, 3), frac(-2, 5)};
  const Matrix<Rational> a = dani_matrix(z, 4, DirichletMode::kA);
  EXPECT_EQ(determinant(a), Rational(1));
  // Column 1 carries q_1: (N^2 z_1, 1/N, 0).
  EXPECT_EQ(a(0, 1), Rational(16) * frac(1, 3));
  EXPECT_EQ(a(1, 1), frac(1, 4));
  EXPECT_EQ(a(2, 1), Rational(0));
  const Matrix<Rational> b = dani_matrix(z, 4, DirichletMode::kB);
  EXPECT_EQ(determinant(b), Rational(1));
  // Column n carries q: (N z_1, N z_2, N^-2).
  EXPECT_EQ(b(0, 2), Rational(4) * frac(1, 3));
  EXPECT_EQ(b(1, 2), Rational(4) * frac(-2, 5));
  EXPECT_EQ(b(2, 2), frac(1, 16));
}

TEST(SolvableLattice, AgreesWithDirectEnumerationOnRandomQueries) {
  std::mt19937_64 rng(2024);
  int disagreements = 0, solvable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 2;
    std::vector<Rational> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(random_rational(rng));
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, 50)(rng);
    const Rational lambda = random_lambda(rng);
    const DirichletMode mode = (trial / 2) % 2 == 0 ? DirichletMode::kA : DirichletMode::kB;
    const DirichletQuery q = query(z, N, lambda, mode);
    const bool direct = solvable_direct(q).solvable;
    const bool lattice = solvable_lattice(q);
    const bool brute = brute_solvable(z, N, lambda, mode);
    solvable += direct;
    if (direct != lattice || direct != brute) {
      ++disagreements;
      ADD_FAILURE() << "z0=" << z[0] << " N=" << N << " lambda=" << lambda << " mode=" << mode_name(mode)
                    << " direct=" << direct << " lattice=" << lattice << " brute=" << brute;
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(solvable, 100);
  EXPECT_LT(solvable, 450);
}

TEST(SolvableDirect, Monotone) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Rational> z{random_rational(rng), random_rational(rng)};
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(2, 30)(rng);
    const DirichletMode mode = trial % 2 ? DirichletMode::kA : DirichletMode::kB;
    bool previous = false;
    for (long k = 1; k <= 10; ++k) {
      const bool now = solvable_direct(query(z, N, frac(k, 10), mode)).solvable;
      EXPECT_TRUE(!previous || now);
      previous = now;
    }
  }
}

TEST(SolvableDirect, ErrorsAndBudget) {
  EXPECT_THROW(solvable_direct(query({Rational(0)}, 5, Rational(0), DirichletMode::kB)), Error);
  EXPECT_THROW(solvable_direct(query({Rational(0)}, 5, frac(11, 10), DirichletMode::kB)), Error);
  EXPECT_THROW(solvable_direct(query({Rational(0)}, 0, Rational(1), DirichletMode::kB)), Error);
  try {
    solvable_direct(query({Rational(0)}, 5, Rational(0), DirichletMode::kA));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigInvalid);
  }
  try {
    solvable_direct(query({frac(1, 3), frac(1, 7)}, 100000, Rational(1), DirichletMode::kB));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
  DirichletOptions small;
  small.budget = 1000;
  EXPECT_THROW(solvable_direct(query({frac(1, 3), frac(1, 7)}, 100, Rational(1), DirichletMode::kA), small), Error);
}

TEST(SolvableDirect, IrrationalTargetsUseEnclosures) {
  // sqrt(2) against its 200-bit dyadic truncation: no query here sits within
  // 2^-150 of a boundary, so both must agree.
  const RealEnclosure e = enclose_real("sqrt(2)", 200);
  for (std::int64_t N = 1; N <= 60; ++N)
    for (long k : {3L, 7L, 10L}) {
      const DirichletQuery irr{DirichletTarget::expressions({"sqrt(2)"}), N, frac(k, 10), DirichletMode::kB};
      const DirichletResult a = solvable_direct(irr);
      EXPECT_EQ(a.solvable, solvable_direct(query({e.lo}, N, frac(k, 10), DirichletMode::kB)).solvable) << N;
      EXPECT_FALSE(a.flagged);
    }

  // x = 1/4 + 2^-200 with N = 4, lambda = 1: q = 1 sits 2^-200 outside the
  // bound, which 128 bits cannot see; q = 3 then works with p = 1.
  const DirichletQuery near{DirichletTarget::expressions({"1/4 + 2^-200 * sqrt(2) / sqrt(2)"}), 4, Rational(1),
                            DirichletMode::kB};
  const DirichletResult r = solvable_direct(near);
  EXPECT_TRUE(r.solvable);
  EXPECT_TRUE(r.flagged);
  EXPECT_EQ(r.witness->q, std::vector<Integer>{Integer(3)});
  EXPECT_EQ(r.witness->p, std::vector<Integer>{Integer(1)});

  // Exactly on the boundary but only known through enclosures.
  const DirichletQuery tie{DirichletTarget::expressions({"sqrt(2) * sqrt(2) / 8"}), 4, Rational(1),
                           DirichletMode::kB};
  try {
    solvable_direct(tie);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionExhausted);
  }
}

TEST(MinLambda, Examples) {
  for (std::int64_t N : {1, 2, 5, 17}) {
    const MinLambda m = min_lambda(DirichletTarget::exact({Rational(0)}), N, DirichletMode::kB);
    EXPECT_EQ(m.lo, frac(1, N));
    EXPECT_EQ(m.hi, frac(1, N));
    EXPECT_EQ(m.witness->q, std::vector<Integer>{Integer(1)});
  }
  const MinLambda half = min_lambda(DirichletTarget::exact({frac(1, 2)}), 2, DirichletMode::kB);
  EXPECT_EQ(half.hi, Rational(1));
  EXPECT_TRUE(half.boundary);
  EXPECT_FALSE(half.above_one);
}

TEST(MinLambda, IsTheExactThreshold) {
  std::mt19937_64 rng(77);
  const Rational shrink = Rational(1) - frac(1, 1000000000);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 2;
    std::vector<Rational> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(random_rational(rng));
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, 50)(rng);
    const DirichletMode mode = (trial / 2) % 2 ? DirichletMode::kA : DirichletMode::kB;
    const MinLambda m = min_lambda(DirichletTarget::exact(z), N, mode);
    ASSERT_EQ(m.lo, m.hi);
    ASSERT_LE(m.hi, 1);
    EXPECT_TRUE(solvable_direct(query(z, N, m.hi, mode)).solvable);
    EXPECT_FALSE(solvable_direct(query(z, N, Rational(m.hi * shrink), mode)).solvable)
        << "z0=" << z[0] << " N=" << N << " min=" << m.hi;
  }
}

TEST(MinLambda, DirichletBound) {
  std::mt19937_64 rng(31);
  int boundary = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 2;
    std::vector<Rational> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(random_rational(rng));
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, n == 1 ? 200 : 40)(rng);
    const MinLambda m = min_lambda(DirichletTarget::exact(z), N, trial % 4 < 2 ? DirichletMode::kA : DirichletMode::kB);
    EXPECT_FALSE(m.above_one);
    EXPECT_LE(m.hi, 1);
    boundary += m.boundary;
  }
  EXPECT_GT(boundary, 0);
}

TEST(MinLambda, IrrationalEnclosure) {
  const MinLambda m = min_lambda(DirichletTarget::expressions({"sqrt(2)"}), 12, DirichletMode::kB);
  EXPECT_LT(m.lo, m.hi);
  EXPECT_LT(Rational(m.hi - m.lo), frac(1, 1000000000));
  // q = 5 gives max(5/12, 12 ||5 sqrt 2||) = 12 (0.0710678...).
  EXPECT_EQ(m.witness->q, std::vector<Integer>{Integer(5)});
  EXPECT_NEAR(m.hi.get_d(), 12 * (5 * std::sqrt(2.0) - 7), 1e-12);
}

TEST(NSet, Parse) {
  EXPECT_EQ(NSet::parse("3..6").values, (std::vector<std::int64_t>{3, 4, 5, 6}));
  EXPECT_EQ(NSet::parse("2..10:4").values, (std::vector<std::int64_t>{2, 6, 10}));
  EXPECT_EQ(NSet::parse("7,3,100").values, (std::vector<std::int64_t>{7, 3, 100}));
  for (const char* bad : {"", "0..3", "5..2", "a,b", "1..", "3,,4"}) EXPECT_THROW(NSet::parse(bad), Error) << bad;
}

TEST(DensityScan, RationalPointAndDirichlet) {
  const DensityReport rep = density_scan(DirichletTarget::exact({Rational(0)}), NSet::range(2, 100), frac(1, 2),
                                         DirichletMode::kB);
  EXPECT_EQ(rep.total, 99u);
  EXPECT_EQ(rep.density, 1.0);
  EXPECT_TRUE(rep.unsolvable.empty());

  const DensityReport at_one = density_scan(DirichletTarget::expressions({"cbrt(2)", "cbrt(4)"}), NSet::range(1, 150),
                                            Rational(1), DirichletMode::kA);
  EXPECT_EQ(at_one.density, 1.0);
}

TEST(DensityScan, KeepsUnsolvableNAndIsThreadIndependent) {
  const DirichletTarget z = DirichletTarget::expressions({"sqrt(3)", "3"});
  const NSet ns = NSet::range(2, 400);
  const DensityReport a = density_scan(z, ns, frac(1, 4), DirichletMode::kA, {}, true);
  const Executor two = [](std::size_t count, const std::function<void(std::size_t)>& task) {
    std::thread t([&] {
      for (std::size_t i = 1; i < count; i += 2) task(i);
    });
    for (std::size_t i = 0; i < count; i += 2) task(i);
    t.join();
  };
  const DensityReport b = density_scan(z, ns, frac(1, 4), DirichletMode::kA, {}, true, two);
  EXPECT_LT(a.density, 1.0);
  EXPECT_LE(a.unsolvable.size(), 100u);
  EXPECT_EQ(a.solvable, b.solvable);
  EXPECT_EQ(a.unsolvable, b.unsolvable);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].solvable, b.rows[i].solvable);
    // solvable exactly when lambda reaches the threshold
    EXPECT_EQ(a.rows[i].solvable, a.rows[i].min_lambda->hi <= frac(1, 4)) << a.rows[i].N;
  }
}

TEST(DensityScan, ModesCoincideForOneCoordinate) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const DirichletTarget z = DirichletTarget::exact({random_rational(rng)});
    const DensityReport a = density_scan(z, NSet::range(1, 300), frac(1, 2), DirichletMode::kA);
    const DensityReport b = density_scan(z, NSet::range(1, 300), frac(1, 2), DirichletMode::kB);
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].solvable, b.rows[i].solvable);
  }
}

TEST(DensityScan, OneGoodApproximationSolvesARunOfN) {
  // 538 (pi - 3) - 223 (e - 2) is within 5e-7 of an integer, so from
  // N = 538 / lambda on that q alone decides the scan.
  const DirichletTarget z = DirichletTarget::expressions({"pi - 3", "e - 2"});
  const DensityReport rep = density_scan(z, NSet::range(1076, 1200), frac(1, 2), DirichletMode::kA);
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.solvable) << row.N;
  }
  EXPECT_FALSE(solvable_direct(DirichletQuery{z, 1075, frac(1, 2), DirichletMode::kA}).solvable);
}

// Solvability at N is a function of the lattice a(N) u(z) Z^(n+1); over random
// z that lattice equidistributes on expanding horospheres, so the z-averaged
// solvable fraction is the same on {2..M} and {M..2M}. The spread is measured
// across independent z, not binomially within one orbit (solvable N come in
// runs whose length grows with N).
TEST(DensityScan, ScaleConsistencyOverRandomPoints) {
  const std::size_t points = 40;
  double sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < points; ++i) {
    CounterRng rng(1, i);
    const DirichletTarget z = DirichletTarget::exact({Rational(rng.uniform()), Rational(rng.uniform())});
    const double a = density_scan(z, NSet::range(2, 1000), frac(1, 2), DirichletMode::kA).density;
    const double b = density_scan(z, NSet::range(1000, 2000), frac(1, 2), DirichletMode::kA).density;
    sum += a - b;
    sum_sq += (a - b) * (a - b);
  }
  const double mean = sum / points;
  const double se = std::sqrt((sum_sq - points * mean * mean) / (points - 1) / points);
  EXPECT_LT(std::fabs(mean / se), 3.0) << mean << " +- " << se;
}

}  // namespace
}  // namespace latlab
