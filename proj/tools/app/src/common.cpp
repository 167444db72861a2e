#include "common.hpp"

#include "latlab/error.hpp"

namespace latlab::app {

namespace {

std::pair<Rational, Rational> parse_interval(const Config& cfg, const std::string& key, const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) invalid(key, "interval '" + text + "' should read lo..hi");
  try {
    Rational lo = parse_rational(text.substr(0, dots));
    Rational hi = parse_rational(text.substr(dots + 2));
    if (!(lo < hi)) invalid(key, "interval '" + text + "' is empty");
    return {lo, hi};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigInvalid) throw;
    invalid(key, "interval '" + text + "': " + e.what());
  }
  (void)cfg;
}

}  // namespace

std::uint64_t config_seed(const Config& cfg) { return cfg.count("seed", 1); }

CurveSpec resolve_curve(const Config& cfg, const std::string& fallback_id) {
  const int sources = cfg.has("curve") + cfg.has("curve_psi") + cfg.has("curve_file");
  if (sources > 1) invalid("curve", "give only one of curve, curve_psi and curve_file");
  try {
    if (cfg.has("curve_file")) return load_curve_file(cfg.text("curve_file"));
    if (cfg.has("curve_psi")) {
      std::string text = "psi = " + cfg.text("curve_psi") + "\n";
      if (cfg.has("curve_d")) text += "d = " + cfg.text("curve_d") + "\n";
      if (cfg.has("curve_domain")) {
        const auto parts = split_list(cfg.text("curve_domain"));
        if (parts.size() == 1) {
          text += "domain = " + parts[0] + "\n";
        } else {
          for (std::size_t i = 0; i < parts.size(); ++i) text += "domain" + std::to_string(i + 1) + " = " + parts[i] + "\n";
        }
      }
      CurveSpec c = parse_curve(text);
      if (cfg.has("n") && static_cast<std::size_t>(cfg.integer("n")) != c.n)
        invalid("n", "curve_psi has " + std::to_string(c.n) + " components");
      return c;
    }
    const std::string id = cfg.text("curve", fallback_id);
    if (id.empty()) invalid("curve", "required");
    const std::int64_t n = cfg.integer("n", 0);
    if (n < 0) invalid("n", "must be positive");
    return builtin_curve(id, static_cast<std::size_t>(n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigInvalid || e.code() == ErrorCode::kIo) throw;
    const std::string key = cfg.has("curve_psi") ? "curve_psi" : cfg.has("curve_file") ? "curve_file" : "curve";
    invalid(key, e.what());
  }
}

Box parse_box(const Config& cfg, const std::string& key, std::size_t dim, const std::string& fallback) {
  const std::string text = cfg.text(key, fallback);
  if (text.rfind("cube:", 0) == 0) {
    Rational r;
    try {
      r = parse_rational(text.substr(5));
    } catch (const Error&) {
      invalid(key, "bad half-width in '" + text + "'");
    }
    if (r <= 0) invalid(key, "cube half-width must be positive");
    return Box::cube(dim, r);
  }
  const auto parts = split_list(text);
  if (parts.size() != dim) invalid(key, "needs " + std::to_string(dim) + " intervals, got " + std::to_string(parts.size()));
  std::vector<Rational> lo, hi;
  for (const auto& p : parts) {
    auto [a, b] = parse_interval(cfg, key, p);
    lo.push_back(a);
    hi.push_back(b);
  }
  return Box(lo, hi);
}

Body parse_body(const Config& cfg, const std::string& key, std::size_t dim, const std::string& fallback) {
  const std::string text = cfg.text(key, fallback);
  if (text.rfind("ball:", 0) == 0) {
    std::string rest = text.substr(5);
    std::vector<double> center(dim, 0.0);
    if (const auto at = rest.find('@'); at != std::string::npos) {
      std::vector<std::string> coords;
      std::string cur;
      for (char c : rest.substr(at + 1) + ";") {
        if (c == ';') {
          coords.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (coords.size() != dim) invalid(key, "ball center needs " + std::to_string(dim) + " coordinates");
      for (std::size_t i = 0; i < dim; ++i) {
        try {
          center[i] = parse_rational(coords[i]).get_d();
        } catch (const Error&) {
          invalid(key, "bad center coordinate '" + coords[i] + "'");
        }
      }
      rest = rest.substr(0, at);
    }
    double r = 0.0;
    try {
      r = parse_rational(rest).get_d();
    } catch (const Error&) {
      invalid(key, "bad radius '" + rest + "'");
    }
    if (r <= 0) invalid(key, "radius must be positive");
    return Body::ball(center, r);
  }
  const Box box = parse_box(cfg, key, dim, fallback);
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < dim; ++i) {
    lo.push_back(box.lo[i].get_d());
    hi.push_back(box.hi[i].get_d());
  }
  return Body::box(lo, hi);
}

}  // namespace latlab::app
