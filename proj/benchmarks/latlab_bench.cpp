#include <benchmark/benchmark.h>

#include "latlab/dirichlet.hpp"
#include "latlab/experiment.hpp"
#include "latlab/identity.hpp"
#include "latlab/real_expr.hpp"

using namespace latlab;

static void BM_ExactResidualMoment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CurveSpec c = builtin_curve("moment", n);
  const Jet<Rational> j = jet_at<Rational>(c, Rational(1, 3));
  const auto b = solve_correction(j);
  const auto xi = limit_element(j, b);
  for (auto _ : state) benchmark::DoNotOptimize(identity_residual<Rational>(c, Rational(1, 3), b, xi, Rational(1000)));
}
BENCHMARK(BM_ExactResidualMoment)->Arg(2)->Arg(4)->Arg(6);

static void BM_FloatResidualTranscendental(benchmark::State& state) {
  const CurveSpec c = builtin_curve("transcendental");
  PrecisionScope scope(auto_precision_bits(2, 5));
  const BigFloat s(0);
  const Jet<BigFloat> j = jet_at<BigFloat>(c, s);
  const auto b = solve_correction(j);
  const auto xi = limit_element(j, b);
  for (auto _ : state) benchmark::DoNotOptimize(identity_residual<BigFloat>(c, s, b, xi, BigFloat(100000)));
}
BENCHMARK(BM_FloatResidualTranscendental);

// One shrinking-ball sample: build a(t) Phi(x), reduce, count in the cube.
static void BM_ShrinkingBallSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ShrinkingBallSetup setup;
  setup.curve = builtin_curve("moment", n);
  setup.s = {parse_real("sqrt(2)", 128)};
  setup.t = Rational(state.range(1));
  setup.body = Body::interval(-1, 1);
  setup.f = Observable::box_count(Box::cube(n + 1, Rational(1)));
  setup.seed = 1;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(shrinking_ball_sample(setup, i++));
}
BENCHMARK(BM_ShrinkingBallSample)->Args({1, 1000})->Args({2, 100})->Args({2, 1000});

static void BM_SolvableDirect(benchmark::State& state) {
  const DirichletTarget z = DirichletTarget::exact({Rational(0.6180339887498949), Rational(0.4142135623730951)});
  const DirichletQuery q{z, state.range(0), Rational(1, 2), DirichletMode::kA};
  for (auto _ : state) benchmark::DoNotOptimize(solvable_direct(q));
}
BENCHMARK(BM_SolvableDirect)->Arg(100)->Arg(1000);

static void BM_SolvableLattice(benchmark::State& state) {
  const DirichletTarget z = DirichletTarget::exact({Rational(0.6180339887498949), Rational(0.4142135623730951)});
  const DirichletQuery q{z, state.range(0), Rational(1, 2), DirichletMode::kA};
  for (auto _ : state) benchmark::DoNotOptimize(solvable_lattice(q));
}
BENCHMARK(BM_SolvableLattice)->Arg(100)->Arg(1000);

static void BM_DensityScanIrrational(benchmark::State& state) {
  const DirichletTarget z = DirichletTarget::expressions({"sqrt(2)", "cbrt(3)"});
  const NSet ns = NSet::range(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(density_scan(z, ns, Rational(1, 4), DirichletMode::kA));
}
BENCHMARK(BM_DensityScanIrrational)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
