#include <cmath>

#include "common.hpp"
#include "latlab/error.hpp"
#include "latlab/real_expr.hpp"

namespace latlab::app {

namespace {

std::vector<BigFloat> parse_point(const Config& cfg, const std::string& key, std::size_t d, unsigned bits) {
  std::vector<BigFloat> out;
  for (const auto& item : cfg.list(key)) {
    try {
      out.push_back(parse_real(item, bits));
    } catch (const Error& e) {
      invalid(key, e.what());
    }
  }
  if (out.size() != d) invalid(key, "needs " + std::to_string(d) + " coordinates");
  return out;
}

std::string coords_text(const std::vector<double>& x) {
  std::vector<std::string> parts;
  for (double v : x) parts.push_back(fmt_double(v));
  return join(parts, ";");
}

nlohmann::json report_json(const ExperimentReport& r) {
  return {{"observable", r.observable}, {"samples", r.samples}, {"t", r.t},
          {"mean", r.mean},             {"variance", r.variance}, {"std_error", r.std_error},
          {"oracle", r.oracle},         {"deviation_se", r.deviation_se},
          {"relative_deviation", r.oracle != 0 ? (r.mean - r.oracle) / r.oracle : 0.0},
          {"seed", r.seed},             {"precision", r.precision}, {"boundary_rate", r.boundary_rate},
          {"boundary_flag", r.boundary_flag}, {"wall_seconds", r.wall_seconds}};
}

void add_records(RunOutput& out, const std::string& run, const ExperimentReport& r) {
  for (const SampleRecord& rec : r.records)
    out.csv.add({run, r.t, std::to_string(rec.index), coords_text(rec.coords), std::to_string(rec.value),
                 rec.boundary ? "1" : "0"});
}

std::string line(const std::string& label, const ExperimentReport& r) {
  return label + " t=" + r.t + " mean=" + fmt_short(r.mean) + " oracle=" + fmt_short(r.oracle) +
         " deviation=" + fmt_short(r.deviation_se) + " SE";
}

}  // namespace

RunOutput run_equidist(const Config& cfg, const Executor& exec) {
  std::set<std::string> keys{"source", "s", "t", "samples", "body", "box", "observable", "consistency", "max_z",
                             "control_s", "tolerance_rel", "expect", "deviation_threshold", "budget", "records"};
  keys.insert(kCurveKeys.begin(), kCurveKeys.end());
  cfg.restrict_to(keys);

  const std::string source = cfg.choice("source", "shrinking", {"shrinking", "haar"});
  const std::string expect = cfg.choice("expect", "none", {"none", "match", "anomaly"});
  const double threshold = cfg.real("deviation_threshold", 3.0);
  const std::uint64_t samples = cfg.count("samples", 10000);
  if (samples < 2) invalid("samples", "need at least 2 samples for a standard error");
  const std::uint64_t seed = config_seed(cfg);
  const unsigned bits = default_precision(cfg);
  const bool records = cfg.flag("records", true);
  EnumerationLimits limits;
  limits.budget = cfg.count("budget", limits.budget);

  RunOutput out;
  out.csv.schema = "latlab.equidist.v1";
  out.csv.columns = {"run", "t", "sample_index", "eta_coords", "observable_value", "boundary"};
  std::vector<std::string> lines;
  nlohmann::json runs = nlohmann::json::array();

  if (source == "haar") {
    const Box box = parse_box(cfg, "box", 2, "cube:1");
    const ExperimentReport rep = haar_monte_carlo_n1(box, samples, seed, bits, exec);
    if (records) add_records(out, "haar", rep);
    runs.push_back({{"run", "haar"}, {"report", report_json(rep)}});
    lines.push_back(line("haar(n=1)", rep));
    if (expect == "match")
      out.check(std::fabs(rep.deviation_se) <= threshold, "Haar Monte Carlo mean off by " + fmt_short(rep.deviation_se) + " SE");
    out.json["runs"] = runs;
    out.summary = "equidist: observable=" + rep.observable + " " + join(lines, " | ");
    return out;
  }

  const CurveSpec curve = resolve_curve(cfg, "moment");
  ShrinkingBallSetup setup;
  setup.curve = curve;
  setup.s = parse_point(cfg, "s", curve.d, bits);
  setup.body = parse_body(cfg, "body", curve.d, "cube:1");
  const std::string obs = cfg.choice("observable", "box_count", {"box_count", "one"});
  setup.f = obs == "one" ? Observable::one() : Observable::box_count(parse_box(cfg, "box", curve.n + 1, "cube:1"));
  setup.samples = samples;
  setup.seed = seed;
  setup.precision = bits;
  setup.limits = limits;

  std::optional<ShrinkingBallSetup> control;
  if (cfg.has("control_s")) {
    control = setup;
    control->s = parse_point(cfg, "control_s", curve.d, bits);
  }
  const bool consistency = cfg.flag("consistency", false);
  if (consistency && setup.body.kind != Body::Kind::kBox) invalid("consistency", "sub-body split needs a box body");
  const double max_z = cfg.real("max_z", 3.0);
  const std::optional<double> tol = cfg.has("tolerance_rel") ? std::optional<double>(cfg.real("tolerance_rel", 0)) : std::nullopt;

  for (const std::string& t_text : cfg.has("t") ? cfg.list("t") : std::vector<std::string>{"1000"}) {
    Rational t;
    try {
      t = parse_rational(t_text);
    } catch (const Error&) {
      invalid("t", "'" + t_text + "' is not a rational number");
    }
    if (t <= 0) invalid("t", "must be positive");
    setup.t = t;
    nlohmann::json entry;
    const ExperimentReport rep = shrinking_ball_average(setup, exec);
    if (records) add_records(out, "main", rep);
    entry["t"] = rep.t;
    entry["main"] = report_json(rep);
    lines.push_back(line("s=" + cfg.text("s"), rep));
    const double rel = rep.oracle != 0 ? (rep.mean - rep.oracle) / rep.oracle : 0.0;
    if (expect == "match" && tol)
      out.check(std::fabs(rel) <= *tol, "t=" + rep.t + ": relative deviation " + fmt_short(rel) + " exceeds " + fmt_short(*tol));
    if (expect == "anomaly")
      out.check(std::fabs(rep.deviation_se) > threshold,
                "t=" + rep.t + ": deviation " + fmt_short(rep.deviation_se) + " SE is not beyond " + fmt_short(threshold));

    if (consistency) {
      const double mid = 0.5 * (setup.body.lo[0] + setup.body.hi[0]);
      Body c1 = setup.body, c2 = setup.body;
      c1.hi[0] = mid;
      c2.lo[0] = mid;
      const ConsistencyReport cr = sub_ball_consistency(setup, c1, c2, max_z, exec);
      if (records) {
        add_records(out, "sub1", cr.first);
        add_records(out, "sub2", cr.second);
      }
      entry["consistency"] = {{"sub1", report_json(cr.first)}, {"sub2", report_json(cr.second)},
                              {"z", cr.z}, {"max_z", max_z}, {"pass", cr.pass}};
      lines.push_back("sub-bodies z=" + fmt_short(cr.z));
      out.check(cr.pass, "t=" + rep.t + ": sub-body means differ by " + fmt_short(cr.z) + " combined SE");
    }
    if (control) {
      control->t = t;
      const ExperimentReport crep = shrinking_ball_average(*control, exec);
      if (records) add_records(out, "control", crep);
      entry["control"] = report_json(crep);
      lines.push_back(line("control s=" + cfg.text("control_s"), crep));
      if (expect == "anomaly")
        out.check(std::fabs(crep.deviation_se) <= threshold,
                  "t=" + rep.t + ": control deviates by " + fmt_short(crep.deviation_se) + " SE");
    }
    runs.push_back(entry);
  }
  out.json["curve"] = curve.describe();
  out.json["body"] = setup.body.describe();
  out.json["expect"] = expect;
  out.json["runs"] = runs;
  out.summary = "equidist: observable=" + setup.f.id() + " " + join(lines, " | ");
  return out;
}

}  // namespace latlab::app
