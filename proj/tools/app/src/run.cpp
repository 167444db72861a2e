#include "latlab_app/run.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "latlab/curve.hpp"
#include "latlab/error.hpp"

namespace latlab::app {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) fail(ErrorCode::kInvalidArgument, "CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out = "#schema=" + schema + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_field(columns[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\n";
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

Executor thread_pool_executor(unsigned threads) {
  if (threads <= 1) return sequential_executor();
  return [threads](std::size_t count, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    pool.clear();
    if (error) std::rethrow_exception(error);
  };
}

RunOutput run(const Config& cfg, const Executor& exec) {
  const std::string cmd = cfg.command();
  RunOutput out;
  if (cmd == "identity") {
    out = run_identity(cfg, exec);
  } else if (cmd == "twist") {
    out = run_twist(cfg, exec);
  } else if (cmd == "equidist") {
    out = run_equidist(cfg, exec);
  } else if (cmd == "traj") {
    out = run_traj(cfg, exec);
  } else if (cmd == "dirichlet") {
    out = run_dirichlet(cfg, exec);
  } else if (cmd == "curves") {
    out = run_curves(cfg);
  } else {
    invalid("command", "unknown command '" + cmd + "'");
  }
  out.command = cmd;
  out.json["command"] = cmd;
  out.json["config"] = cfg.values();
  out.json["checks_failed"] = out.failed_checks;
  out.json["ok"] = out.ok();
  return out;
}

RunOutput run(const Config& cfg) {
  const std::int64_t threads = cfg.integer("threads", 1);
  if (threads < 1 || threads > 1024) invalid("threads", "must lie in 1..1024");
  return run(cfg, thread_pool_executor(static_cast<unsigned>(threads)));
}

int run_and_report(const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutput out = run(cfg);
  out.json["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cfg.has("csv")) write_file(cfg.text("csv"), out.csv.str());
  if (cfg.has("json")) write_file(cfg.text("json"), out.json.dump(2) + "\n");
  if (!cfg.flag("quiet", false)) {
    std::cout << out.summary << "\n";
    for (const auto& f : out.failed_checks) std::cout << "check failed: " << f << "\n";
  }
  return out.ok() ? 0 : 1;
}

int cli_main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << "usage: latlab <identity|twist|equidist|traj|dirichlet|curves> [--config FILE] [--key value ...]\n"
                 "See docs/cli.md for the keys of each command.\n";
    return args.empty() ? exit_status(ErrorCode::kConfigInvalid) : 0;
  }
  try {
    return run_and_report(Config::from_args(args));
  } catch (const Error& e) {
    std::cerr << "latlab: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "latlab: internal error: " << e.what() << "\n";
    return 125;
  }
}

RunOutput run_curves(const Config& cfg) {
  cfg.restrict_to({});
  RunOutput out;
  out.csv.schema = "latlab.curves.v1";
  out.csv.columns = {"id", "d", "n", "summary"};
  nlohmann::json list = nlohmann::json::array();
  for (const CatalogEntry& e : builtin_catalog()) {
    const std::string n = e.fixed_n ? std::to_string(e.fixed_n) : "any";
    out.csv.add({e.id, std::to_string(e.d), n, e.summary});
    list.push_back({{"id", e.id}, {"d", e.d}, {"n", n}, {"summary", e.summary}});
    out.summary += e.id + " (d=" + std::to_string(e.d) + ", n=" + n + "): " + e.summary + "\n";
  }
  if (!out.summary.empty()) out.summary.pop_back();
  out.json["curves"] = list;
  return out;
}

}  // namespace latlab::app
