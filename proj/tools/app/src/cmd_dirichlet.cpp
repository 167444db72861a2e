#include <cmath>

#include "common.hpp"
#include "latlab/dirichlet.hpp"
#include "latlab/error.hpp"
#include "latlab/rng.hpp"

namespace latlab::app {

namespace {

std::string vec_text(const std::vector<Integer>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x.get_str());
  return parts.size() == 1 ? parts[0] : "(" + join(parts, ";") + ")";
}

std::string witness_text(const std::optional<DirichletWitness>& w) {
  if (!w) return "none";
  return "q=" + vec_text(w->q) + " p=" + vec_text(w->p);
}

nlohmann::json witness_json(const std::optional<DirichletWitness>& w) {
  if (!w) return nullptr;
  std::vector<std::string> q, p;
  for (const auto& x : w->q) q.push_back(x.get_str());
  for (const auto& x : w->p) p.push_back(x.get_str());
  return {{"q", q}, {"p", p}};
}

nlohmann::json min_lambda_json(const MinLambda& m) {
  return {{"lo", m.lo.get_str()}, {"hi", m.hi.get_str()}, {"boundary", m.boundary}, {"above_one", m.above_one},
          {"witness", witness_json(m.witness)}};
}

DirichletOptions options_from(const Config& cfg) {
  DirichletOptions o;
  o.budget = cfg.count("budget", o.budget);
  o.bits = static_cast<unsigned>(cfg.count("bits", o.bits));
  o.max_bits = static_cast<unsigned>(cfg.count("max_bits", o.max_bits));
  if (o.bits < 32 || o.max_bits < o.bits) invalid("bits", "need 32 <= bits <= max_bits");
  return o;
}

Rational lambda_from(const Config& cfg, const Rational& fallback) {
  const Rational lambda = cfg.rational("lambda", fallback);
  if (lambda <= 0 || lambda > 1) invalid("lambda", "must satisfy 0 < lambda <= 1, got " + lambda.get_str());
  return lambda;
}

DirichletMode mode_from(const Config& cfg) {
  try {
    return parse_mode(cfg.text("mode", "A"));
  } catch (const Error& e) {
    invalid("mode", e.what());
  }
}

const std::vector<std::string> kRowColumns{"N", "solvable", "q", "p", "flagged", "min_lambda_lo", "min_lambda_hi", "boundary"};

std::vector<std::string> row_fields(std::int64_t N, bool solvable, const std::optional<DirichletWitness>& w, bool flagged,
                                    const std::optional<MinLambda>& m) {
  return {std::to_string(N),
          solvable ? "1" : "0",
          w ? vec_text(w->q) : "",
          w ? vec_text(w->p) : "",
          flagged ? "1" : "0",
          m ? m->lo.get_str() : "",
          m ? m->hi.get_str() : "",
          m ? (m->boundary ? "1" : "0") : ""};
}

// Coordinates with small denominators, a large prime denominator, or the
// exact value of a random double.
Rational random_coordinate(CounterRng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      const long den = static_cast<long>(rng.uniform_int(1, 12));
      return make_rational(Integer(static_cast<long>(rng.uniform_int(0, den - 1))), Integer(den));
    }
    case 1:
      return make_rational(Integer(static_cast<long>(rng.uniform_int(0, 65536))), Integer(65537));
    default:
      return Rational(rng.uniform());
  }
}

Rational random_lambda(CounterRng& rng) {
  const long den = static_cast<long>(rng.uniform_int(1, 8));
  return make_rational(Integer(static_cast<long>(rng.uniform_int(1, den))), Integer(den));
}

std::string z_text(const std::vector<Rational>& z) {
  std::vector<std::string> parts;
  for (const auto& x : z) parts.push_back(x.get_str());
  return join(parts, ";");
}

RunOutput cross_oracle_suite(const Config& cfg, const Executor& exec) {
  const std::uint64_t queries = cfg.count("queries", 500);
  const std::uint64_t thresholds = cfg.count("thresholds", 200);
  const std::int64_t n_max = cfg.integer("n_max", 2);
  const std::int64_t N_max = cfg.integer("N_max", 50);
  if (n_max < 1 || n_max > 4) invalid("n_max", "must lie in 1..4");
  if (N_max < 1) invalid("N_max", "must be positive");
  const std::uint64_t seed = config_seed(cfg);
  const DirichletOptions opts = options_from(cfg);

  struct Case {
    std::string kind;
    DirichletMode mode = DirichletMode::kA;
    std::vector<Rational> z;
    std::int64_t N = 1;
    Rational lambda;
    bool direct = false, lattice = false;  // query: the two oracles; threshold: at lo and just below
    bool ok = false;
  };
  std::vector<Case> cases(queries + thresholds);
  exec(cases.size(), [&](std::size_t i) {
    const bool threshold = i >= queries;
    CounterRng rng(seed, i, threshold ? 1 : 0);
    Case& c = cases[i];
    c.kind = threshold ? "threshold" : "query";
    c.mode = rng.uniform_int(0, 1) ? DirichletMode::kB : DirichletMode::kA;
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, n_max));
    for (std::size_t k = 0; k < n; ++k) c.z.push_back(random_coordinate(rng));
    c.N = rng.uniform_int(1, N_max);
    const DirichletTarget target = DirichletTarget::exact(c.z);
    if (!threshold) {
      c.lambda = random_lambda(rng);
      const DirichletQuery q{target, c.N, c.lambda, c.mode};
      c.direct = solvable_direct(q, opts).solvable;
      c.lattice = solvable_lattice(q);
      c.ok = c.direct == c.lattice;
    } else {
      const MinLambda m = min_lambda(target, c.N, c.mode, opts);
      c.lambda = m.lo;
      c.direct = solvable_direct({target, c.N, m.lo, c.mode}, opts).solvable;
      const Rational below = m.lo * make_rational(Integer(1073741823), Integer(1073741824));
      c.lattice = solvable_direct({target, c.N, below, c.mode}, opts).solvable;
      c.ok = c.direct && !c.lattice && !m.above_one;
    }
  });

  RunOutput out;
  out.csv.schema = "latlab.dirichlet_cross_oracle.v1";
  out.csv.columns = {"kind", "sample_index", "mode", "z", "N", "lambda", "first", "second", "ok"};
  std::size_t disagreements = 0, threshold_failures = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    if (!c.ok) (c.kind == "query" ? disagreements : threshold_failures)++;
    out.csv.add({c.kind, std::to_string(i), mode_name(c.mode), z_text(c.z), std::to_string(c.N), c.lambda.get_str(),
                 c.direct ? "1" : "0", c.lattice ? "1" : "0", c.ok ? "1" : "0"});
  }
  out.json["suite"] = "cross_oracle";
  out.json["queries"] = queries;
  out.json["disagreements"] = disagreements;
  out.json["thresholds"] = thresholds;
  out.json["threshold_failures"] = threshold_failures;
  out.check(disagreements == 0, std::to_string(disagreements) + " direct/lattice disagreements");
  out.check(threshold_failures == 0, std::to_string(threshold_failures) + " min_lambda threshold failures");
  out.summary = "dirichlet cross_oracle: queries=" + std::to_string(queries) + " disagreements=" +
                std::to_string(disagreements) + " thresholds=" + std::to_string(thresholds) +
                " threshold_failures=" + std::to_string(threshold_failures) + " (oracle: 0)";
  return out;
}

RunOutput dirichlet_bound_suite(const Config& cfg, const Executor& exec) {
  const std::uint64_t pairs = cfg.count("pairs", 1000);
  const std::int64_t n_max = cfg.integer("n_max", 2);
  const std::int64_t N_max = cfg.integer("N_max", 100);
  if (n_max < 1 || n_max > 4) invalid("n_max", "must lie in 1..4");
  if (N_max < 1) invalid("N_max", "must be positive");
  const std::uint64_t seed = config_seed(cfg);
  const DirichletOptions opts = options_from(cfg);

  struct Case {
    DirichletMode mode = DirichletMode::kA;
    std::vector<Rational> z;
    std::int64_t N = 1;
    MinLambda m;
  };
  std::vector<Case> cases(pairs);
  exec(pairs, [&](std::size_t i) {
    CounterRng rng(seed, i, 2);
    Case& c = cases[i];
    c.mode = rng.uniform_int(0, 1) ? DirichletMode::kB : DirichletMode::kA;
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, n_max));
    for (std::size_t k = 0; k < n; ++k) c.z.push_back(random_coordinate(rng));
    c.N = rng.uniform_int(1, N_max);
    c.m = min_lambda(DirichletTarget::exact(c.z), c.N, c.mode, opts);
  });

  RunOutput out;
  out.csv.schema = "latlab.dirichlet_bound.v1";
  out.csv.columns = {"sample_index", "mode", "z", "N", "min_lambda", "boundary", "q", "p"};
  std::size_t violations = 0, boundary = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    violations += c.m.above_one || c.m.hi > 1;
    boundary += c.m.boundary;
    out.csv.add({std::to_string(i), mode_name(c.mode), z_text(c.z), std::to_string(c.N), c.m.lo.get_str(),
                 c.m.boundary ? "1" : "0", c.m.witness ? vec_text(c.m.witness->q) : "",
                 c.m.witness ? vec_text(c.m.witness->p) : ""});
  }
  out.json["suite"] = "dirichlet_bound";
  out.json["pairs"] = pairs;
  out.json["violations"] = violations;
  out.json["boundary_markers"] = boundary;
  out.check(violations == 0, std::to_string(violations) + " pairs with min_lambda > 1");
  out.summary = "dirichlet dirichlet_bound: pairs=" + std::to_string(pairs) + " violations=" + std::to_string(violations) +
                " boundary=" + std::to_string(boundary) + " (oracle: min_lambda <= 1)";
  return out;
}

RunOutput davenport_schmidt_suite(const Config& cfg, const Executor& exec) {
  const std::uint64_t count = cfg.count("s_count", 50);
  const double s_lo = cfg.real("s_lo", 1.0), s_hi = cfg.real("s_hi", 2.0);
  if (!(s_lo < s_hi)) invalid("s_lo", "need s_lo < s_hi");
  const Rational lambda = lambda_from(cfg, Rational(1, 4));
  const DirichletMode mode = mode_from(cfg);
  NSet ns;
  try {
    ns = NSet::parse(cfg.text("N", "2..2000"));
  } catch (const Error& e) {
    invalid("N", e.what());
  }
  const std::uint64_t seed = config_seed(cfg);
  const DirichletOptions opts = options_from(cfg);

  RunOutput out;
  out.csv.schema = "latlab.dirichlet_davenport_schmidt.v1";
  out.csv.columns = {"sample_index", "s", "density", "unsolvable", "unsolvable_N_ge_4", "unsolvable_upper_half", "last_unsolvable_N"};
  std::size_t all_solvable = 0;
  std::size_t min_upper = SIZE_MAX;
  const std::int64_t upper_from = ns.values.empty() ? 0 : (ns.values.front() + ns.values.back()) / 2;
  nlohmann::json per_s = nlohmann::json::array();
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    const double sd = rng.uniform(s_lo, s_hi);
    const Rational s(sd);
    const DensityReport rep = density_scan(DirichletTarget::exact({s, Rational(s * s)}), ns, lambda, mode, opts, false, exec);
    std::size_t ge4 = 0, upper = 0;
    std::int64_t last = 0;
    for (const DensityRow& r : rep.rows) {
      if (r.solvable) continue;
      ge4 += r.N >= 4;
      upper += r.N >= upper_from;
      last = r.N;
    }
    all_solvable += rep.solvable == rep.total;
    min_upper = std::min(min_upper, upper);
    out.csv.add({std::to_string(i), fmt_double(sd), fmt_double(rep.density), std::to_string(rep.total - rep.solvable),
                 std::to_string(ge4), std::to_string(upper), std::to_string(last)});
    per_s.push_back({{"s", s.get_str()}, {"density", rep.density}, {"unsolvable", rep.total - rep.solvable},
                     {"unsolvable_N_ge_4", ge4}, {"unsolvable_upper_half", upper}, {"last_unsolvable_N", last}});
  }
  out.json["suite"] = "davenport_schmidt";
  out.json["lambda"] = lambda.get_str();
  out.json["mode"] = mode_name(mode);
  out.json["N"] = ns.descriptor;
  out.json["upper_half_from"] = upper_from;
  out.json["per_s"] = per_s;
  out.json["s_without_unsolvable_N"] = all_solvable;
  out.json["min_unsolvable_upper_half"] = min_upper;
  out.check(all_solvable == 0, std::to_string(all_solvable) + " values of s solve every N in the set");
  out.summary = "dirichlet davenport_schmidt: s_count=" + std::to_string(count) + " lambda=" + lambda.get_str() +
                " s_with_density_1=" + std::to_string(all_solvable) + " min_unsolvable_in_upper_half=" +
                std::to_string(min_upper) + " (oracle: every s has density < 1)";
  return out;
}

}  // namespace

RunOutput run_dirichlet(const Config& cfg, const Executor& exec) {
  cfg.restrict_to({"mode", "n", "z", "N", "lambda", "min_lambda", "method", "budget", "bits", "max_bits", "suite",
                   "queries", "thresholds", "n_max", "N_max", "pairs", "s_count", "s_lo", "s_hi"});
  if (cfg.has("suite")) {
    const std::string suite = cfg.choice("suite", "", {"cross_oracle", "dirichlet_bound", "davenport_schmidt"});
    if (suite == "cross_oracle") return cross_oracle_suite(cfg, exec);
    if (suite == "dirichlet_bound") return dirichlet_bound_suite(cfg, exec);
    return davenport_schmidt_suite(cfg, exec);
  }

  const DirichletMode mode = mode_from(cfg);
  const std::vector<std::string> z_items = cfg.list("z");
  if (cfg.has("n") && static_cast<std::size_t>(cfg.integer("n")) != z_items.size())
    invalid("n", "z has " + std::to_string(z_items.size()) + " coordinates");
  DirichletTarget z;
  try {
    z = DirichletTarget::expressions(z_items);
  } catch (const Error& e) {
    invalid("z", e.what());
  }
  const Rational lambda = lambda_from(cfg, Rational(1));
  const DirichletOptions opts = options_from(cfg);
  const bool with_min = cfg.flag("min_lambda", false);
  const std::string method = cfg.choice("method", "direct", {"direct", "lattice", "both"});
  if (method != "direct" && !z.is_exact()) invalid("method", "the lattice criterion needs a rational z");
  const std::string N_text = cfg.text("N");

  RunOutput out;
  out.csv.schema = "latlab.dirichlet.v1";
  out.csv.columns = kRowColumns;
  out.json["z"] = z.describe();
  out.json["mode"] = mode_name(mode);
  out.json["lambda"] = lambda.get_str();

  const bool single = N_text.find_first_of(",.") == std::string::npos;
  if (single) {
    const std::int64_t N = cfg.integer("N");
    if (N < 1) invalid("N", "must be at least 1");
    const DirichletQuery q{z, N, lambda, mode};
    DirichletResult res;
    if (method != "lattice") res = solvable_direct(q, opts);
    if (method != "direct") {
      const bool lat = solvable_lattice(q);
      out.json["lattice_solvable"] = lat;
      if (method == "lattice") res.solvable = lat;
      else out.check(lat == res.solvable, "direct enumeration and the lattice criterion disagree");
    }
    std::optional<MinLambda> m;
    if (with_min) m = min_lambda(z, N, mode, opts);
    out.csv.add(row_fields(N, res.solvable, res.witness, res.flagged, m));
    out.json["N"] = N;
    out.json["solvable"] = res.solvable;
    out.json["witness"] = witness_json(res.witness);
    out.json["flagged"] = res.flagged;
    if (m) out.json["min_lambda"] = min_lambda_json(*m);
    out.summary = "dirichlet: mode=" + mode_name(mode) + " z=" + z.describe() + " N=" + std::to_string(N) + " lambda=" +
                  lambda.get_str() + ": " + (res.solvable ? "solvable, witness " + witness_text(res.witness) : "unsolvable");
    if (m) out.summary += " min_lambda=" + m->lo.get_str() + (m->boundary ? " (boundary)" : "");
    return out;
  }

  if (method != "direct") invalid("method", "N-set scans use direct enumeration");
  NSet ns;
  try {
    ns = NSet::parse(N_text);
  } catch (const Error& e) {
    invalid("N", e.what());
  }
  const DensityReport rep = density_scan(z, ns, lambda, mode, opts, with_min, exec);
  for (const DensityRow& r : rep.rows) out.csv.add(row_fields(r.N, r.solvable, r.witness, r.flagged, r.min_lambda));
  out.json["N"] = rep.n_set;
  out.json["solvable"] = rep.solvable;
  out.json["total"] = rep.total;
  out.json["density"] = rep.density;
  out.json["std_error"] = rep.std_error;
  out.json["unsolvable"] = rep.unsolvable;
  out.summary = "dirichlet: mode=" + mode_name(mode) + " z=" + z.describe() + " N=" + rep.n_set + " lambda=" +
                lambda.get_str() + " observable=density value=" + fmt_short(rep.density) + " se=" + fmt_short(rep.std_error) +
                " solvable=" + std::to_string(rep.solvable) + "/" + std::to_string(rep.total);
  return out;
}

}  // namespace latlab::app
