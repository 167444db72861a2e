#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latlab/executor.hpp"
#include "latlab_app/config.hpp"

namespace latlab::app {

// CSV artifact: a "#schema=latlab.<command>.v1" line, a header row, then data
// rows. Nothing time-dependent goes in, so identical configs give identical
// bytes.
struct CsvTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string str() const;
};

struct RunOutput {
  std::string command;
  CsvTable csv;
  nlohmann::json json;
  // One line: observable, oracle and deviation in standard errors (or the
  // command's equivalent).
  std::string summary;
  std::vector<std::string> failed_checks;

  bool ok() const { return failed_checks.empty(); }
  void check(bool condition, const std::string& what) {
    if (!condition) failed_checks.push_back(what);
  }
};

// Workers pull indices from a shared counter; the first exception is
// rethrown after all workers stop. threads <= 1 runs inline.
Executor thread_pool_executor(unsigned threads);

RunOutput run(const Config& cfg, const Executor& exec);
RunOutput run(const Config& cfg);

// Writes csv/json artifacts named in cfg and prints the summary; returns the
// process exit status.
int run_and_report(const Config& cfg);

// main() body: parses args, reports errors on stderr with their exit code.
int cli_main(int argc, char** argv);

// Shared formatting.
std::string fmt_double(double x);  // round-trip exact (%.17g)
std::string fmt_short(double x);   // %.6g for summaries
std::string join(const std::vector<std::string>& items, const std::string& sep);

RunOutput run_identity(const Config& cfg, const Executor& exec);
RunOutput run_twist(const Config& cfg, const Executor& exec);
RunOutput run_equidist(const Config& cfg, const Executor& exec);
RunOutput run_traj(const Config& cfg, const Executor& exec);
RunOutput run_dirichlet(const Config& cfg, const Executor& exec);
RunOutput run_curves(const Config& cfg);

}  // namespace latlab::app
