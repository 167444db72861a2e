#include "latlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "latlab/flow.hpp"

namespace latlab {

Body Body::box(std::vector<double> lo, std::vector<double> hi) {
  require(lo.size() == hi.size() && !lo.empty(), ErrorCode::kDimensionMismatch, "body bounds");
  for (std::size_t i = 0; i < lo.size(); ++i)
    require(lo[i] < hi[i], ErrorCode::kInvalidArgument, "body box needs lo < hi");
  Body b;
  b.kind = Kind::kBox;
  b.lo = std::move(lo);
  b.hi = std::move(hi);
  return b;
}

Body Body::ball(std::vector<double> center, double radius) {
  require(!center.empty(), ErrorCode::kDimensionMismatch, "ball center");
  require(radius > 0, ErrorCode::kInvalidArgument, "ball radius must be positive");
  Body b;
  b.kind = Kind::kBall;
  b.center = std::move(center);
  b.radius = radius;
  return b;
}

bool Body::contains(const std::vector<double>& x) const {
  if (kind == Kind::kBox) {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  double s = 0;
  for (std::size_t i = 0; i < center.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
  return s <= radius * radius;
}

double Body::volume() const {
  if (kind == Kind::kBox) {
    double v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
  const double k = static_cast<double>(center.size());
  return std::pow(std::numbers::pi, k / 2) / std::tgamma(k / 2 + 1) * std::pow(radius, k);
}

std::vector<double> Body::sample(CounterRng& rng) const {
  std::vector<double> x(dim());
  if (kind == Kind::kBox) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    return x;
  }
  do {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(center[i] - radius, center[i] + radius);
  } while (!contains(x));
  return x;
}

std::string Body::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == Kind::kBox) {
    for (std::size_t i = 0; i < lo.size(); ++i) os << (i ? "x" : "") << '[' << lo[i] << ',' << hi[i] << ']';
  } else {
    os << "ball(r=" << radius << ')';
  }
  return os.str();
}

Rational haar_oracle(const Box& a) { return a.volume(); }

Rational haar_oracle(const Observable& f) {
  return f.kind == Observable::Kind::kOne ? Rational(1) : haar_oracle(*f.box);
}

Executor sequential_executor() {
  return [](std::size_t count, const std::function<void(std::size_t)>& task) {
    for (std::size_t i = 0; i < count; ++i) task(i);
  };
}

void summarize(ExperimentReport& rep, double oracle) {
  rep.samples = rep.records.size();
  rep.oracle = oracle;
  // Integer sums keep the mean independent of summation order.
  Integer sum(0), sum_sq(0);
  std::size_t boundary = 0;
  for (const auto& r : rep.records) {
    const Integer v(std::to_string(r.value), 10);
    sum += v;
    sum_sq += v * v;
    boundary += r.boundary ? 1 : 0;
  }
  const double m = static_cast<double>(rep.samples);
  if (rep.samples == 0) return;
  const Rational mean = make_rational(sum, Integer(static_cast<unsigned long>(rep.samples)));
  rep.mean = mean.get_d();
  if (rep.samples > 1) {
    const Rational centered = Rational(sum_sq) - mean * sum;
    rep.variance = Rational(centered / Integer(static_cast<unsigned long>(rep.samples - 1))).get_d();
  }
  rep.std_error = std::sqrt(rep.variance / m);
  const double diff = rep.mean - oracle;
  rep.deviation_se = rep.std_error > 0 ? diff / rep.std_error : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
  rep.boundary_rate = static_cast<double>(boundary) / m;
  rep.boundary_flag = rep.boundary_rate > 0.001;
}

namespace {

template <class T>
std::uint64_t observe_impl(const Observable& f, const Matrix<T>& g, const EnumerationLimits& limits, bool* boundary) {
  if (boundary) *boundary = false;
  if (f.kind == Observable::Kind::kOne) return 1;
  const UnimodularLattice lattice = UnimodularLattice::from_group_element(g);
  const BoxCount c = count_in_box(lattice, *f.box, limits);
  if (boundary) *boundary = c.boundary_points > 0;
  return c.count;
}

}  // namespace

std::uint64_t observe(const Observable& f, const Matrix<BigFloat>& g, const EnumerationLimits& limits,
                      bool* boundary) {
  return observe_impl(f, g, limits, boundary);
}

std::uint64_t observe(const Observable& f, const Matrix<Rational>& g, const EnumerationLimits& limits,
                      bool* boundary) {
  return observe_impl(f, g, limits, boundary);
}

Matrix<Rational> shrinking_ball_element(const CurveSpec& curve, std::span<const BigFloat> x, const Rational& t) {
  const std::size_t n = curve.n;
  const RowVector<BigFloat> phi = evaluate_phi<BigFloat>(curve, x);
  Rational top(1);
  for (std::size_t i = 0; i < n; ++i) top *= t;
  Matrix<Rational> g(n + 1, n + 1);
  g(0, 0) = top;
  const BigFloat top_f(top, x.empty() ? default_precision() : x[0].precision());
  for (std::size_t j = 1; j <= n; ++j) g(0, j) = (top_f * phi[j]).to_rational();
  const Rational low = 1 / t;
  for (std::size_t i = 1; i <= n; ++i) g(i, i) = low;
  return g;
}

namespace {

template <class Fn>
ExperimentReport run_records(std::size_t count, const Executor& exec, Fn&& sample) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.records.resize(count);
  std::vector<std::exception_ptr> errors(count);
  exec(count, [&](std::size_t i) {
    try {
      rep.records[i] = sample(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

SampleRecord shrinking_ball_sample(const ShrinkingBallSetup& setup, std::size_t index) {
  PrecisionScope scope(setup.precision);
  CounterRng rng(setup.seed, index);
  SampleRecord rec;
  rec.index = index;
  rec.coords = setup.body.sample(rng);
  std::vector<BigFloat> point(setup.s.size());
  for (std::size_t i = 0; i < point.size(); ++i)
    point[i] = setup.s[i] + BigFloat(rec.coords[i], setup.precision) / BigFloat(setup.t, setup.precision);
  require(in_domain<BigFloat>(setup.curve, point), ErrorCode::kOutOfDomain, "s + eta/t leaves the curve domain");
  const Matrix<Rational> g = shrinking_ball_element(setup.curve, point, setup.t);
  rec.value = observe(setup.f, g, setup.limits, &rec.boundary);
  return rec;
}

ExperimentReport shrinking_ball_average(const ShrinkingBallSetup& setup, const Executor& exec) {
  require(setup.samples >= 1, ErrorCode::kInvalidArgument, "need at least one sample");
  require(setup.s.size() == setup.curve.d && setup.body.dim() == setup.curve.d, ErrorCode::kDimensionMismatch,
          "base point, body and curve dimensions");
  require(setup.t > 0, ErrorCode::kInvalidArgument, "t must be positive");
  if (setup.f.box) {
    require(setup.f.box->dim() == setup.curve.n + 1, ErrorCode::kDimensionMismatch, "box must live in R^(n+1)");
  }
  ExperimentReport rep =
      run_records(setup.samples, exec, [&](std::size_t i) { return shrinking_ball_sample(setup, i); });
  rep.observable = setup.f.id();
  rep.t = setup.t.get_str();
  rep.seed = setup.seed;
  rep.precision = setup.precision;
  summarize(rep, haar_oracle(setup.f).get_d());
  return rep;
}

ConsistencyReport sub_ball_consistency(const ShrinkingBallSetup& setup, const Body& c1, const Body& c2,
                                       double max_z, const Executor& exec) {
  ConsistencyReport out;
  ShrinkingBallSetup a = setup, b = setup;
  a.body = c1;
  b.body = c2;
  b.seed = setup.seed + 1;
  out.first = shrinking_ball_average(a, exec);
  out.second = shrinking_ball_average(b, exec);
  const double se = std::hypot(out.first.std_error, out.second.std_error);
  const double diff = std::fabs(out.first.mean - out.second.mean);
  out.z = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
  out.pass = out.z <= max_z;
  return out;
}

ExperimentReport haar_monte_carlo_n1(const Box& a, std::size_t samples, std::uint64_t seed, unsigned precision,
                                     const Executor& exec) {
  require(a.dim() == 2, ErrorCode::kDimensionMismatch, "the modular-surface oracle needs a box in R^2");
  require(samples >= 1, ErrorCode::kInvalidArgument, "need at least one sample");
  const EnumerationLimits limits;
  ExperimentReport rep = run_records(samples, exec, [&](std::size_t i) {
    PrecisionScope scope(precision);
    CounterRng rng(seed, i);
    double x, y;
    do {
      x = rng.uniform(-0.5, 0.5);
      y = (std::sqrt(3.0) / 2) / (1.0 - rng.uniform());
    } while (x * x + y * y < 1.0);
    const double theta = rng.uniform(0.0, 2 * std::numbers::pi);
    SampleRecord rec;
    rec.index = i;
    rec.coords = {x, y, theta};
    const BigFloat bx(x, precision), by(y, precision), th(theta, precision);
    const BigFloat root = sqrt(by);
    // Columns y^(-1/2) (1, 0) and y^(-1/2) (x, y), rotated by theta.
    Matrix<BigFloat> basis(2, 2);
    basis(0, 0) = BigFloat(1) / root;
    basis(1, 0) = BigFloat(0);
    basis(0, 1) = bx / root;
    basis(1, 1) = root;
    Matrix<BigFloat> rot(2, 2);
    rot(0, 0) = cos(th);
    rot(0, 1) = -sin(th);
    rot(1, 0) = sin(th);
    rot(1, 1) = cos(th);
    rec.value = observe(Observable::box_count(a), Matrix<BigFloat>(rot * basis), limits, &rec.boundary);
    return rec;
  });
  rep.observable = "box_count";
  rep.t = "haar";
  rep.seed = seed;
  rep.precision = precision;
  summarize(rep, haar_oracle(a).get_d());
  return rep;
}

ExperimentReport trajectory_average(const TrajectorySetup& setup, const Executor& exec) {
  require(setup.grid >= 1, ErrorCode::kInvalidArgument, "grid must be positive");
  require(setup.T > 0, ErrorCode::kInvalidArgument, "T must be positive");
  require(setup.Q || setup.Q_exact, ErrorCode::kInvalidArgument, "trajectory needs a path Q");
  require(!setup.Q_exact || setup.g0_exact, ErrorCode::kInvalidArgument, "an exact path needs an exact base point");
  ExperimentReport rep = run_records(setup.grid, exec, [&](std::size_t k) {
    PrecisionScope scope(setup.precision);
    const Rational node = setup.T * make_rational(Integer(static_cast<unsigned long>(2 * k + 1)),
                                                  Integer(static_cast<unsigned long>(2 * setup.grid)));
    SampleRecord rec;
    rec.index = k;
    rec.coords = {node.get_d()};
    if (setup.Q_exact) {
      rec.value = observe(setup.f, Matrix<Rational>(setup.Q_exact(node) * *setup.g0_exact), setup.limits, &rec.boundary);
    } else {
      const BigFloat at(node, setup.precision);
      rec.value = observe(setup.f, Matrix<BigFloat>(setup.Q(at) * setup.g0), setup.limits, &rec.boundary);
    }
    return rec;
  });
  rep.observable = setup.f.id();
  rep.t = setup.T.get_str();
  rep.precision = setup.precision;
  summarize(rep, haar_oracle(setup.f).get_d());
  return rep;
}

}  // namespace latlab
