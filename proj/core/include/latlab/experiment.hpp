#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latlab/curve.hpp"
#include "latlab/executor.hpp"
#include "latlab/lattice.hpp"
#include "latlab/rng.hpp"

namespace latlab {

// Convex body C in R^d: an axis box or a Euclidean ball.
struct Body {
  enum class Kind { kBox, kBall };
  Kind kind = Kind::kBox;
  std::vector<double> lo, hi;  // box
  std::vector<double> center;  // ball
  double radius = 0.0;

  static Body box(std::vector<double> lo, std::vector<double> hi);
  static Body interval(double lo, double hi) { return box({lo}, {hi}); }
  static Body ball(std::vector<double> center, double radius);

  std::size_t dim() const { return kind == Kind::kBox ? lo.size() : center.size(); }
  bool contains(const std::vector<double>& x) const;
  double volume() const;
  // Uniform point (rejection from the bounding box for balls).
  std::vector<double> sample(CounterRng& rng) const;
  std::string describe() const;
};

// f_A(L) = #(L \ 0) inside the box A, or the constant 1.
struct Observable {
  enum class Kind { kOne, kBoxCount };
  Kind kind = Kind::kBoxCount;
  std::optional<Box> box;

  static Observable one() { return Observable{Kind::kOne, std::nullopt}; }
  static Observable box_count(Box a) { return Observable{Kind::kBoxCount, std::move(a)}; }
  std::string id() const { return kind == Kind::kOne ? "one" : "box_count"; }
};

// The Siegel mean value: the Haar average of f_A over unimodular lattices is
// vol(A); the constant observable averages to 1.
Rational haar_oracle(const Box& a);
Rational haar_oracle(const Observable& f);

struct SampleRecord {
  std::size_t index = 0;
  std::vector<double> coords;  // eta in C, or the time of a trajectory node
  std::uint64_t value = 0;
  bool boundary = false;  // some counted point sits on the box boundary
};

struct ExperimentReport {
  std::string observable;
  std::size_t samples = 0;
  std::string t;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double std_error = 0.0;
  double oracle = 0.0;
  // (mean - oracle) / std_error; 0 when both vanish.
  double deviation_se = 0.0;
  std::uint64_t seed = 0;
  unsigned precision = 0;
  double wall_seconds = 0.0;
  double boundary_rate = 0.0;
  // Boundary hits on more than 0.1% of samples.
  bool boundary_flag = false;
  std::vector<SampleRecord> records;
};

// Fills the statistics of `rep` from its records (kept in index order).
void summarize(ExperimentReport& rep, double oracle);

struct ShrinkingBallSetup {
  CurveSpec curve;
  std::vector<BigFloat> s;
  // Rational, so the lower rows of a(t) Phi are exact and lattice points on
  // faces of the box are decided exactly.
  Rational t;
  Body body;
  Observable f;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned precision = 128;
  EnumerationLimits limits;
};

// f(a(t) Phi(s + eta/t) Z^(n+1)) with eta drawn from CounterRng(seed, index).
SampleRecord shrinking_ball_sample(const ShrinkingBallSetup& setup, std::size_t index);

// Throws OutOfDomain when s + t^-1 C leaves the curve domain.
ExperimentReport shrinking_ball_average(const ShrinkingBallSetup& setup,
                                        const Executor& exec = sequential_executor());

struct ConsistencyReport {
  ExperimentReport first;
  ExperimentReport second;
  // |mean_1 - mean_2| / sqrt(se_1^2 + se_2^2)
  double z = 0.0;
  bool pass = false;
};

// The same experiment on two disjoint sub-bodies (seeds seed and seed + 1).
ConsistencyReport sub_ball_consistency(const ShrinkingBallSetup& setup, const Body& c1, const Body& c2,
                                       double max_z = 3.0, const Executor& exec = sequential_executor());

// Monte Carlo average of f_A over SL(2,R)/SL(2,Z): z = x + iy from the
// standard fundamental domain with density dx dy / y^2, frame angle uniform;
// the lattice is R(theta) y^(-1/2) (Z z + Z).
ExperimentReport haar_monte_carlo_n1(const Box& a, std::size_t samples, std::uint64_t seed, unsigned precision = 128,
                                     const Executor& exec = sequential_executor());

// (1/T) int_0^T f(Q(t) x) dt by the midpoint rule on `grid` nodes; x is the
// lattice g0 Z^(n+1). Nodes T (2k+1) / (2 grid) are rational; Q_exact, when
// set, is used instead of Q so that face points are decided exactly.
struct TrajectorySetup {
  std::function<Matrix<BigFloat>(const BigFloat& t)> Q;
  std::function<Matrix<Rational>(const Rational& t)> Q_exact;
  Matrix<BigFloat> g0;
  std::optional<Matrix<Rational>> g0_exact;
  Rational T;
  Observable f;
  std::size_t grid = 1000;
  unsigned precision = 128;
  EnumerationLimits limits;
};

ExperimentReport trajectory_average(const TrajectorySetup& setup, const Executor& exec = sequential_executor());

// f on the lattice g Z^(n+1).
std::uint64_t observe(const Observable& f, const Matrix<BigFloat>& g, const EnumerationLimits& limits,
                      bool* boundary = nullptr);
std::uint64_t observe(const Observable& f, const Matrix<Rational>& g, const EnumerationLimits& limits,
                      bool* boundary = nullptr);

// a(t) Phi(x) with the top row t^n phi(x) rounded to its exact dyadic value
// and the lower rows (1/t) e_i kept exact; the determinant is exactly 1.
Matrix<Rational> shrinking_ball_element(const CurveSpec& curve, std::span<const BigFloat> x, const Rational& t);

}  // namespace latlab
