#include <cmath>

#include "common.hpp"
#include "latlab/error.hpp"
#include "latlab/flow.hpp"
#include "latlab/identity.hpp"
#include "latlab/real_expr.hpp"

namespace latlab::app {

namespace {

// sum_k t^k B^k by Horner's rule.
template <class T>
Matrix<T> correction_path(const Matrix<T>& B, std::size_t n, const T& t) {
  const std::size_t dim = B.rows();
  Matrix<T> out = Matrix<T>::identity(dim);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<T> next = out * B;
    next *= t;
    next += Matrix<T>::identity(dim);
    out = std::move(next);
  }
  return out;
}

}  // namespace

RunOutput run_traj(const Config& cfg, const Executor& exec) {
  std::set<std::string> keys{"path", "s", "x", "z", "T", "grid", "box", "observable", "expect_mean", "tolerance", "budget"};
  keys.insert(kCurveKeys.begin(), kCurveKeys.end());
  cfg.restrict_to(keys);

  const std::string path = cfg.choice("path", "correction", {"correction", "horocycle", "identity"});
  const unsigned bits = default_precision(cfg);
  PrecisionScope scope(bits);

  TrajectorySetup setup;
  setup.precision = bits;
  setup.grid = cfg.count("grid", 1000);
  if (setup.grid < 1) invalid("grid", "must be positive");
  setup.limits.budget = cfg.count("budget", setup.limits.budget);

  std::size_t dim = 0;
  std::string path_text;
  if (path == "horocycle") {
    dim = 2;
    path_text = "u(t) on R^2";
    setup.Q_exact = [](const Rational& t) { return unipotent(std::span<const Rational>(&t, 1)); };
    setup.Q = [](const BigFloat& t) { return unipotent(std::span<const BigFloat>(&t, 1)); };
  } else if (path == "identity") {
    dim = static_cast<std::size_t>(cfg.integer("n", 2)) + 1;
    if (dim < 2) invalid("n", "must be positive");
    path_text = "identity";
    setup.Q_exact = [dim](const Rational&) { return Matrix<Rational>::identity(dim); };
    setup.Q = [dim](const BigFloat&) { return Matrix<BigFloat>::identity(dim); };
  } else {
    const CurveSpec curve = resolve_curve(cfg, "moment");
    if (curve.d != 1 || !curve.polynomial()) invalid("curve", "the correction path needs a polynomial curve of one variable");
    Rational s;
    try {
      s = parse_rational(cfg.text("s", "0"));
    } catch (const Error&) {
      invalid("s", "the correction path needs a rational s");
    }
    const NilpotentCorrection<Rational> b = solve_correction(jet_at<Rational>(curve, s));
    dim = curve.n + 1;
    path_text = "P_s(t) for " + curve.describe() + " at s = " + s.get_str();
    const Matrix<BigFloat> Bf = convert<BigFloat>(b.B);
    const std::size_t n = curve.n;
    setup.Q_exact = [B = b.B, n](const Rational& t) { return correction_path(B, n, t); };
    setup.Q = [Bf, n](const BigFloat& t) { return correction_path(Bf, n, t); };
  }

  const std::string x = cfg.choice("x", "standard", {"standard", "translate"});
  if (x == "standard") {
    setup.g0_exact = Matrix<Rational>::identity(dim);
    setup.g0 = Matrix<BigFloat>::identity(dim);
  } else {
    const auto items = cfg.list("z");
    if (items.size() != dim - 1) invalid("z", "needs " + std::to_string(dim - 1) + " coordinates");
    std::vector<Rational> zq;
    std::vector<BigFloat> zf;
    bool exact = true;
    for (const auto& item : items) {
      try {
        zf.push_back(parse_real(item, bits));
        const auto q = parse_real_exact(item);
        exact = exact && q.has_value();
        if (q) zq.push_back(*q);
      } catch (const Error& e) {
        invalid("z", e.what());
      }
    }
    setup.g0 = unipotent(std::span<const BigFloat>(zf));
    if (exact) {
      setup.g0_exact = unipotent(std::span<const Rational>(zq));
    } else {
      setup.Q_exact = nullptr;
    }
  }

  const std::string obs = cfg.choice("observable", "box_count", {"box_count", "one"});
  setup.f = obs == "one" ? Observable::one() : Observable::box_count(parse_box(cfg, "box", dim, "cube:1"));

  RunOutput out;
  out.csv.schema = "latlab.traj.v1";
  out.csv.columns = {"T", "grid", "mean", "variance", "std_error", "oracle", "deviation_se", "boundary_rate"};
  nlohmann::json runs = nlohmann::json::array();
  std::vector<std::string> lines;
  std::vector<double> gaps;
  for (const std::string& T_text : cfg.has("T") ? cfg.list("T") : std::vector<std::string>{"10"}) {
    try {
      setup.T = parse_rational(T_text);
    } catch (const Error&) {
      invalid("T", "'" + T_text + "' is not a rational number");
    }
    if (setup.T <= 0) invalid("T", "must be positive");
    const ExperimentReport rep = trajectory_average(setup, exec);
    out.csv.add({rep.t, std::to_string(setup.grid), fmt_double(rep.mean), fmt_double(rep.variance),
                 fmt_double(rep.std_error), fmt_double(rep.oracle), fmt_double(rep.deviation_se),
                 fmt_double(rep.boundary_rate)});
    runs.push_back({{"T", rep.t}, {"mean", rep.mean}, {"variance", rep.variance}, {"std_error", rep.std_error},
                    {"oracle", rep.oracle}, {"deviation_se", rep.deviation_se}, {"boundary_rate", rep.boundary_rate}});
    gaps.push_back(std::fabs(rep.mean - rep.oracle));
    lines.push_back("T=" + rep.t + " mean=" + fmt_short(rep.mean));
    if (cfg.has("expect_mean")) {
      const double want = cfg.rational("expect_mean").get_d();
      const double tol = cfg.real("tolerance", 0.0);
      out.check(std::fabs(rep.mean - want) <= tol,
                "T=" + rep.t + ": mean " + fmt_short(rep.mean) + " is not within " + fmt_short(tol) + " of " + fmt_short(want));
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i] <= gaps[i - 1];
  out.json["path"] = path_text;
  out.json["base"] = x == "standard" ? "Z^" + std::to_string(dim) : "u(z) Z^" + std::to_string(dim);
  out.json["exact"] = static_cast<bool>(setup.Q_exact);
  out.json["runs"] = runs;
  out.json["oracle_gap_monotone"] = monotone;
  out.summary = "traj: observable=" + setup.f.id() + " oracle=" + fmt_short(haar_oracle(setup.f).get_d()) + " " +
                join(lines, " ") + (gaps.size() > 1 ? std::string(" gap_to_oracle_monotone=") + (monotone ? "yes" : "no") : "");
  return out;
}

}  // namespace latlab::app
