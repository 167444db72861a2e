#include "common.hpp"
#include "latlab/error.hpp"
#include "latlab/pyartli.hpp"

namespace latlab::app {

namespace {

std::string rotation_text(const Matrix<Rational>& g) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g(i, j).get_str());
    rows.push_back(join(row, " "));
  }
  return join(rows, "; ");
}

std::vector<Rational> base_point(const Config& cfg, std::size_t d) {
  if (!cfg.has("s")) return std::vector<Rational>(d, Rational(0));
  std::vector<Rational> s;
  for (const auto& item : cfg.list("s")) {
    try {
      s.push_back(parse_rational(item));
    } catch (const Error&) {
      invalid("s", "'" + item + "' is not rational; exact graph forms need a rational base point");
    }
  }
  if (s.size() != d) invalid("s", "needs " + std::to_string(d) + " coordinates");
  return s;
}

}  // namespace

RunOutput run_twist(const Config& cfg, const Executor& exec) {
  cfg.restrict_to({"curves", "s", "rotations", "rotation_kind", "max_entry"});
  const std::vector<std::string> ids = cfg.has("curves") ? cfg.list("curves")
                                                         : std::vector<std::string>{"twisted2", "paraboloid3", "saddle3"};
  const std::uint64_t rotations = cfg.count("rotations", 50);
  const std::string kind = cfg.choice("rotation_kind", "rational", {"rational", "haar"});
  const long max_entry = static_cast<long>(cfg.integer("max_entry", 4));
  if (max_entry < 1) invalid("max_entry", "must be positive");
  const std::uint64_t seed = config_seed(cfg);
  const unsigned bits = default_precision(cfg);

  RunOutput out;
  out.csv.schema = "latlab.twist.v1";
  out.csv.columns = {"curve",  "seed",     "sample_index",       "g",          "det_Mg",
                     "in_Zs",  "det_xi",   "leading_rows_match", "tangent_rows_match", "rho_nondegenerate",
                     "implication_holds", "algebra_dim", "commuting"};
  std::size_t relation_failures = 0, counterexamples = 0, det_failures = 0, hits = 0, total = 0;
  nlohmann::json per_curve = nlohmann::json::array();

  for (std::size_t ci = 0; ci < ids.size(); ++ci) {
    CurveSpec curve;
    try {
      curve = builtin_curve(ids[ci]);
    } catch (const Error& e) {
      invalid("curves", e.what());
    }
    if (curve.d < 2) invalid("curves", "'" + ids[ci] + "' has d = 1; twist needs d >= 2");
    const std::vector<Rational> s = base_point(cfg, curve.d);
    std::size_t curve_hits = 0;

    if (kind == "rational") {
      const GraphForm<Rational> gf = graph_form_at<Rational>(curve, std::span<const Rational>(s));
      struct Row {
        Matrix<Rational> g;
        TwistingReport<Rational> rep;
        std::optional<TwistedLimit<Rational>> lim;
      };
      std::vector<Row> rows(rotations);
      exec(rotations, [&](std::size_t i) {
        CounterRng rng(seed, i, ci);
        Row& row = rows[i];
        row.g = random_rational_rotation(curve.d, rng, max_entry);
        const Jet<Rational> jet = twisted_jet(gf, row.g);
        row.rep = check_twisting(gf, row.g, jet);
        if (!row.rep.on_locus) row.lim = twisted_limit(jet);
      });
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        relation_failures += !(r.rep.leading_rows_match && r.rep.tangent_rows_match);
        counterexamples += !r.rep.implication_holds;
        curve_hits += r.rep.on_locus;
        std::string det_xi, dim, commuting;
        if (r.lim) {
          det_failures += !(r.lim->xi.det_plus == 1 && r.lim->xi.det_minus == 1 && r.lim->algebra_dim == curve.n + 1 &&
                            r.lim->commuting);
          det_xi = r.lim->xi.det_plus.get_str();
          dim = std::to_string(r.lim->algebra_dim);
          commuting = r.lim->commuting ? "1" : "0";
        }
        out.csv.add({curve.id, std::to_string(seed), std::to_string(i), rotation_text(r.g), r.rep.det_M.get_str(),
                     r.rep.on_locus ? "1" : "0", det_xi, r.rep.leading_rows_match ? "1" : "0",
                     r.rep.tangent_rows_match ? "1" : "0", r.rep.rho_nondegenerate ? "1" : "0",
                     r.rep.implication_holds ? "1" : "0", dim, commuting});
      }
    } else {
      PrecisionScope scope(bits);
      std::vector<BigFloat> sf;
      for (const auto& v : s) sf.emplace_back(v, bits);
      const GraphForm<BigFloat> gf = graph_form_at<BigFloat>(curve, std::span<const BigFloat>(sf));
      std::vector<ProbeRow> rows(rotations);
      exec(rotations, [&](std::size_t i) {
        PrecisionScope inner(bits);
        rows[i] = probe_sample(gf, seed + ci, i);
      });
      for (const ProbeRow& r : rows) {
        curve_hits += r.in_Zs;
        out.csv.add({curve.id, std::to_string(r.seed), std::to_string(r.sample_index), "", r.det_Mg.to_string(30),
                     r.in_Zs ? "1" : "0", r.det_xi ? r.det_xi->to_string(30) : "", "", "", "", "", "", ""});
      }
    }
    hits += curve_hits;
    total += rotations;
    per_curve.push_back({{"curve", curve.id}, {"n", curve.n}, {"d", curve.d}, {"rotations", rotations},
                         {"locus_hits", curve_hits}});
  }

  out.json["rotation_kind"] = kind;
  out.json["curves"] = per_curve;
  out.json["relation_failures"] = relation_failures;
  out.json["implication_counterexamples"] = counterexamples;
  out.json["limit_failures"] = det_failures;
  out.json["locus_fraction"] = total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  if (kind == "rational") {
    out.check(relation_failures == 0, std::to_string(relation_failures) + " twisted jets broke a derivative relation");
    out.check(counterexamples == 0, std::to_string(counterexamples) + " counterexamples to nondegenerate rho => det M(g) != 0");
    out.check(det_failures == 0, std::to_string(det_failures) + " twisted limits failed det = 1 or the algebra checks");
  }
  out.summary = "twist " + kind + ": rotations=" + std::to_string(total) + " relation_failures=" +
                std::to_string(relation_failures) + " implication_counterexamples=" + std::to_string(counterexamples) +
                " locus_fraction=" + fmt_short(out.json["locus_fraction"].get<double>()) + " (oracle: 0 failures)";
  return out;
}

}  // namespace latlab::app
