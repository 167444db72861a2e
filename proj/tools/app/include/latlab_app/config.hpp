#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latlab/scalar.hpp"

namespace latlab::app {

// Flat key = value configuration. Files use one pair per line with '#'
// comments; command-line flags --key value or --key=value override file
// values. Dashes in keys are read as underscores.
class Config {
 public:
  static Config parse_text(const std::string& text, const std::string& origin);
  static Config load_file(const std::string& path);
  // argv[1..]: an optional leading command name, then flags. --config PATH is
  // loaded first wherever it appears; the remaining flags override it.
  static Config from_args(const std::vector<std::string>& args);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.contains(key); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string command() const;

  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
  double real(const std::string& key, double fallback) const;
  Rational rational(const std::string& key) const;
  Rational rational(const std::string& key, const Rational& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  // Top-level comma split; commas inside parentheses stay (root(2, 3)).
  std::vector<std::string> list(const std::string& key) const;
  std::string choice(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed) const;

  // Throws ConfigInvalid naming the first key outside `allowed`.
  void restrict_to(const std::set<std::string>& allowed) const;

  // Sorted key = value lines; parse_text(serialize()) gives back the same map.
  std::string serialize() const;

 private:
  std::map<std::string, std::string> values_;
};

[[noreturn]] void invalid(const std::string& key, const std::string& what);

std::vector<std::string> split_list(const std::string& text);

// Keys every command accepts.
const std::set<std::string>& global_keys();

// precision from the config, else LATLAB_PRECISION, else 128.
unsigned default_precision(const Config& cfg);

}  // namespace latlab::app
