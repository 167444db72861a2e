#include <cmath>
#include <optional>

#include "common.hpp"
#include "latlab/error.hpp"
#include "latlab/identity.hpp"
#include "latlab/real_expr.hpp"
#include "latlab/rng.hpp"

namespace latlab::app {

namespace {

struct TPoint {
  std::string text;
  Rational value;  // |t|
  int sign;
};

std::vector<TPoint> t_points(const Config& cfg) {
  const std::string signs = cfg.choice("signs", "both", {"both", "positive", "negative"});
  std::vector<TPoint> out;
  Rational prev = 0;
  for (const std::string& item : cfg.list("t")) {
    Rational t;
    try {
      t = parse_rational(item);
    } catch (const Error&) {
      invalid("t", "'" + item + "' is not a rational number");
    }
    if (t <= prev) invalid("t", "values must be positive and strictly increasing");
    prev = t;
    if (signs != "negative") out.push_back({item, t, 1});
    if (signs != "positive") out.push_back({"-" + item, t, -1});
  }
  return out;
}

template <Scalar T>
void emit_fit(RunOutput& out, const Config& cfg, const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 4) {
    out.json["fit"] = nullptr;
    return;
  }
  bool all_zero = true;
  for (const auto& p : pts) all_zero = all_zero && p.second == 0.0;
  if (all_zero) {
    out.json["fit"] = {{"exactly_zero", true}};
    out.check(!cfg.has("slope_max"), "exactly zero residual; no decay slope to compare");
    return;
  }
  const DecayFit fit = decay_fit(pts);
  out.json["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"interval_slopes", fit.interval_slopes}};
  if (cfg.has("slope_min")) out.check(fit.slope >= cfg.real("slope_min", 0), "fitted slope " + fmt_short(fit.slope) + " below slope_min");
  if (cfg.has("slope_max")) out.check(fit.slope <= cfg.real("slope_max", 0), "fitted slope " + fmt_short(fit.slope) + " above slope_max");
}

template <Scalar T>
RunOutput residual_sweep(const Config& cfg, const CurveSpec& curve, const T& s, const Jet<T>& jet, unsigned bits,
                         const Executor& exec) {
  RunOutput out;
  const NilpotentCorrection<T> b = solve_correction(jet);
  const LimitElement<T> xi = limit_element(jet, b);
  const std::vector<TPoint> ts = t_points(cfg);

  std::vector<std::optional<ResidualReport<T>>> reports(ts.size());
  exec(ts.size(), [&](std::size_t i) {
    std::optional<PrecisionScope> scope;
    if constexpr (!ScalarTraits<T>::exact) scope.emplace(bits);
    T t = from_rational<T>(ts[i].value);
    if (ts[i].sign < 0) t = -t;
    reports[i] = identity_residual<T>(curve, s, b, xi, t);
  });

  const std::string backend(backend_name(ScalarTraits<T>::backend));
  out.csv.schema = "latlab.identity.v1";
  out.csv.columns = {"t", "sup_norm", "sign", "backend", "precision_bits", "accurate_bits", "top_row_sup"};
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::pair<double, double>> fit_pts;
  const int fit_sign = ts.empty() ? 1 : ts.front().sign;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const ResidualReport<T>& r = *reports[i];
    T top(0);
    for (std::size_t j = 0; j < r.E.cols(); ++j) top = std::max(top, abs_value(r.E(0, j)));
    const std::string acc = r.accurate_bits ? fmt_short(*r.accurate_bits) : "";
    const std::string sup = ScalarTraits<T>::to_string(r.sup_norm);
    out.csv.add({ts[i].text, sup, std::to_string(r.sign), backend, std::to_string(r.precision_bits), acc,
                 ScalarTraits<T>::to_string(top)});
    nlohmann::json row = {{"t", ts[i].text}, {"sign", r.sign}, {"sup_norm", sup}, {"E", matrix_json(r.E)},
                          {"top_row_sup", ScalarTraits<T>::to_string(top)}};
    if (r.accurate_bits) row["accurate_bits"] = *r.accurate_bits;
    rows.push_back(row);
    if (ts[i].sign == fit_sign) fit_pts.emplace_back(ts[i].value.get_d(), to_double(r.sup_norm));
  }

  out.json["curve"] = curve.describe();
  out.json["backend"] = backend;
  out.json["precision_bits"] = bits;
  out.json["B"] = matrix_json(b.B);
  out.json["M"] = matrix_json(b.M);
  out.json["xi_plus"] = matrix_json(xi.xi_plus);
  out.json["xi_minus"] = matrix_json(xi.xi_minus);
  out.json["det_xi_plus"] = ScalarTraits<T>::to_string(xi.det_plus);
  out.json["det_xi_minus"] = ScalarTraits<T>::to_string(xi.det_minus);
  out.json["residuals"] = rows;
  emit_fit<T>(out, cfg, fit_pts);

  std::string slope = "n/a";
  if (out.json["fit"].is_object()) {
    slope = out.json["fit"].contains("slope") ? fmt_short(out.json["fit"]["slope"].get<double>()) : "exactly-zero";
  }
  out.summary = "identity: observable=sup|E(t)| backend=" + backend + " points=" + std::to_string(ts.size()) +
                " last=" + (ts.empty() ? std::string("n/a") : ScalarTraits<T>::to_string(reports.back()->sup_norm)) +
                " oracle=decay slope <= -0.9 fitted_slope=" + slope;
  return out;
}

Rational random_entry(CounterRng& rng, long max_entry) {
  return make_rational(Integer(static_cast<long>(rng.uniform_int(-max_entry, max_entry))),
                       Integer(static_cast<long>(rng.uniform_int(1, max_entry))));
}

// Random nondegenerate jets: row 0 = (1, psi), rows k >= 1 = (0, *).
RunOutput random_jet_suite(const Config& cfg, const Executor& exec) {
  const std::uint64_t count = cfg.count("count", 100);
  const std::int64_t n_max = cfg.integer("n_max", 3);
  const std::uint64_t t_samples = cfg.count("t_samples", 20);
  const long max_entry = static_cast<long>(cfg.integer("max_entry", 9));
  if (n_max < 1 || n_max > 8) invalid("n_max", "must lie in 1..8");
  if (max_entry < 1) invalid("max_entry", "must be positive");
  const std::uint64_t seed = config_seed(cfg);

  struct Row {
    std::size_t n = 0;
    Rational det_M;
    bool conjugate_match = false, nilpotent = false, index_exact = false;
    std::size_t det_ok = 0;
  };
  std::vector<Row> rows(count);
  exec(count, [&](std::size_t i) {
    CounterRng rng(seed, i);
    Row& row = rows[i];
    row.n = static_cast<std::size_t>(rng.uniform_int(1, n_max));
    const std::size_t dim = row.n + 1;
    Matrix<Rational> M(dim, dim);
    do {
      M(0, 0) = 1;
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 1; j < dim; ++j) M(k, j) = random_entry(rng, max_entry);
      row.det_M = determinant(M);
    } while (row.det_M == 0);
    const NilpotentCorrection<Rational> b = solve_correction(M);
    const Matrix<Rational> conjugate = exact_inverse(M) * lower_shift<Rational>(dim) * M;
    row.conjugate_match = b.B == conjugate;
    row.nilpotent = is_zero(power(b.B, static_cast<unsigned>(dim)));
    row.index_exact = !is_zero(power(b.B, static_cast<unsigned>(row.n)));
    for (std::uint64_t k = 0; k < t_samples; ++k) {
      Matrix<Rational> m = Matrix<Rational>::identity(dim);
      m -= b.B * random_entry(rng, max_entry);
      if (determinant(m) == 1) ++row.det_ok;
    }
  });

  RunOutput out;
  out.csv.schema = "latlab.identity_jets.v1";
  out.csv.columns = {"seed", "sample_index", "n", "det_M", "conjugate_match", "B_pow_n1_zero", "B_pow_n_nonzero", "det_checks_ok"};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const bool ok = r.conjugate_match && r.nilpotent && r.index_exact && r.det_ok == t_samples;
    failures += !ok;
    out.csv.add({std::to_string(seed), std::to_string(i), std::to_string(r.n), r.det_M.get_str(),
                 r.conjugate_match ? "1" : "0", r.nilpotent ? "1" : "0", r.index_exact ? "1" : "0",
                 std::to_string(r.det_ok)});
  }
  out.json["suite"] = "random_jets";
  out.json["jets"] = count;
  out.json["t_samples"] = t_samples;
  out.json["failures"] = failures;
  out.check(failures == 0, std::to_string(failures) + " jets failed a nilpotency or uniqueness check");
  out.summary = "identity random_jets: jets=" + std::to_string(count) + " failures=" + std::to_string(failures) +
                " (oracle: 0)";
  return out;
}

}  // namespace

RunOutput run_identity(const Config& cfg, const Executor& exec) {
  std::set<std::string> keys{"s", "t", "signs", "backend", "jet", "h", "slope_min", "slope_max", "suite",
                             "count", "n_max", "t_samples", "max_entry"};
  keys.insert(kCurveKeys.begin(), kCurveKeys.end());
  cfg.restrict_to(keys);
  if (cfg.has("suite")) {
    cfg.choice("suite", "", {"random_jets"});
    return random_jet_suite(cfg, exec);
  }

  const CurveSpec curve = resolve_curve(cfg, "moment");
  if (curve.d != 1) invalid("curve", "identity needs a curve of one variable; use twist for d >= 2");
  const std::string s_text = cfg.text("s", "0");
  const std::string jet_kind = cfg.choice("jet", "analytic", {"analytic", "numeric"});
  const std::optional<Rational> s_exact = [&]() -> std::optional<Rational> {
    try {
      return parse_real_exact(s_text);
    } catch (const Error& e) {
      invalid("s", e.what());
    }
  }();
  std::string backend = cfg.choice("backend", "auto", {"auto", "rational", "float"});
  if (backend == "auto") backend = (curve.polynomial() && s_exact && jet_kind == "analytic") ? "rational" : "float";

  if (backend == "rational") {
    if (!curve.polynomial()) invalid("backend", "the rational backend needs a polynomial curve");
    if (!s_exact) invalid("s", "the rational backend needs a rational s");
    if (jet_kind != "analytic") invalid("jet", "numeric jets are float only");
    const Jet<Rational> jet = jet_at<Rational>(curve, *s_exact);
    RunOutput out = residual_sweep<Rational>(cfg, curve, *s_exact, jet, 0, exec);
    out.json["s"] = s_text;
    return out;
  }

  unsigned bits = 0;
  if (cfg.has("precision") && cfg.text("precision") != "auto") {
    bits = default_precision(cfg);
  } else {
    double log10_t = 0;
    for (const std::string& item : cfg.list("t")) {
      try {
        log10_t = std::max(log10_t, std::log10(parse_rational(item).get_d()));
      } catch (const Error&) {
        invalid("t", "'" + item + "' is not a rational number");
      }
    }
    bits = auto_precision_bits(static_cast<int>(curve.n), log10_t);
  }
  PrecisionScope scope(bits);
  BigFloat s;
  try {
    s = parse_real(s_text, bits);
  } catch (const Error& e) {
    invalid("s", e.what());
  }
  Jet<BigFloat> jet;
  if (jet_kind == "numeric") {
    BigFloat h = default_jet_step();
    if (cfg.has("h")) h = BigFloat(cfg.rational("h"), bits);
    jet = numeric_jet(curve, s, curve.n + 1, h);
  } else {
    jet = jet_at<BigFloat>(curve, s);
  }
  RunOutput out = residual_sweep<BigFloat>(cfg, curve, s, jet, bits, exec);
  out.json["s"] = s_text;
  out.json["jet"] = jet_kind;
  return out;
}

}  // namespace latlab::app
