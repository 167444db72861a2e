#include "latlab_app/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "latlab/error.hpp"

namespace latlab::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
  for (char& c : key)
    if (c == '-') c = '_';
  return key;
}

}  // namespace

void invalid(const std::string& key, const std::string& what) {
  fail(ErrorCode::kConfigInvalid, "field '" + key + "': " + what);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfigInvalid, origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) fail(ErrorCode::kConfigInvalid, origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.has(key)) invalid(key, "given twice in " + origin);
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

Config Config::from_args(const std::vector<std::string>& args) {
  std::vector<std::pair<std::string, std::string>> flags;
  std::optional<std::string> command;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      if (i == 0) {
        command = a;
        continue;
      }
      fail(ErrorCode::kConfigInvalid, "unexpected argument '" + a + "'");
    }
    std::string key = a.substr(2), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      value = args[++i];
    } else {
      value = "true";
    }
    flags.emplace_back(normalize_key(key), value);
  }

  Config cfg;
  for (const auto& [key, value] : flags)
    if (key == "config") cfg = load_file(value);
  for (const auto& [key, value] : flags)
    if (key != "config") cfg.values_[key] = value;
  if (command) {
    if (cfg.has("command") && cfg.values_["command"] != *command)
      invalid("command", "config says '" + cfg.values_["command"] + "' but the command line says '" + *command + "'");
    cfg.values_["command"] = *command;
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) { values_[normalize_key(key)] = value; }

std::string Config::command() const {
  if (!has("command")) fail(ErrorCode::kConfigInvalid, "field 'command': missing (identity, twist, equidist, traj, dirichlet, curves)");
  return values_.at("command");
}

std::string Config::text(const std::string& key) const {
  if (!has(key)) invalid(key, "required");
  return values_.at(key);
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? values_.at(key) : fallback;
}

std::int64_t Config::integer(const std::string& key) const {
  const std::string v = text(key);
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used, 10);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  // Allow exact forms such as 1e4.
  try {
    const Rational q = parse_rational(v);
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  } catch (const Error&) {
  }
  invalid(key, "expected an integer, got '" + v + "'");
}

std::int64_t Config::integer(const std::string& key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t Config::count(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::int64_t x = integer(key);
  if (x < 0) invalid(key, "must be nonnegative");
  return static_cast<std::uint64_t>(x);
}

double Config::real(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  try {
    return parse_rational(values_.at(key)).get_d();
  } catch (const Error&) {
    invalid(key, "expected a number, got '" + values_.at(key) + "'");
  }
}

Rational Config::rational(const std::string& key) const {
  const std::string v = text(key);
  try {
    return parse_rational(v);
  } catch (const Error&) {
    invalid(key, "expected a rational such as 3, 1/4 or 0.25, got '" + v + "'");
  }
}

Rational Config::rational(const std::string& key, const Rational& fallback) const {
  return has(key) ? rational(key) : fallback;
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  invalid(key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> Config::list(const std::string& key) const {
  std::vector<std::string> out = split_list(text(key));
  for (const auto& item : out)
    if (item.empty()) invalid(key, "empty list entry");
  return out;
}

std::string Config::choice(const std::string& key, const std::string& fallback,
                           const std::set<std::string>& allowed) const {
  const std::string v = text(key, fallback);
  if (!allowed.contains(v)) {
    std::string names;
    for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a;
    invalid(key, "'" + v + "' is not one of " + names);
  }
  return v;
}

void Config::restrict_to(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values_)
    if (!allowed.contains(key) && !global_keys().contains(key)) invalid(key, "unknown key for '" + command() + "'");
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

const std::set<std::string>& global_keys() {
  static const std::set<std::string> keys{"command", "seed", "precision", "threads", "csv", "json", "quiet", "name"};
  return keys;
}

unsigned default_precision(const Config& cfg) {
  std::int64_t bits = 128;
  if (cfg.has("precision") && cfg.text("precision") != "auto") {
    bits = cfg.integer("precision");
  } else if (const char* env = std::getenv("LATLAB_PRECISION")) {
    Config tmp;
    tmp.set("LATLAB_PRECISION", env);
    bits = tmp.integer("LATLAB_PRECISION");
  }
  if (bits < 32 || bits > 1'000'000) invalid("precision", "must lie in 32..1000000 bits");
  return static_cast<unsigned>(bits);
}

}  // namespace latlab::app
