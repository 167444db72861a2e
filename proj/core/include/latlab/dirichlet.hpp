#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latlab/executor.hpp"
#include "latlab/lattice.hpp"
#include "latlab/real_expr.hpp"

namespace latlab {

// Mode A: 0 < max|q_i| <= lambda N and |q.z - p| <= lambda / N^n.
// Mode B: 0 < |q| <= lambda N^n and max_i |q z_i - p_i| <= lambda / N.
// Equality counts as solvable in every constraint.
enum class DirichletMode { kA, kB };

std::string mode_name(DirichletMode mode);
DirichletMode parse_mode(const std::string& text);

// The point z in R^n, either exact or as real expressions that are only ever
// used through rigorous enclosures.
class DirichletTarget {
 public:
  static DirichletTarget exact(std::vector<Rational> z);
  // Expressions in the parse_real grammar; rational ones become exact.
  static DirichletTarget expressions(std::vector<std::string> z);

  std::size_t dim() const { return approx_.size(); }
  bool is_exact() const { return exact_.has_value(); }
  // Throws InvalidArgument for inexact targets.
  const std::vector<Rational>& exact_values() const;
  std::vector<RealEnclosure> enclose(unsigned bits) const;
  // Nearest doubles and a bound on |z_i - approx_i|.
  const std::vector<double>& approx() const { return approx_; }
  const std::vector<double>& approx_radius() const { return radius_; }
  std::string describe() const;

 private:
  std::optional<std::vector<Rational>> exact_;
  std::vector<std::string> text_;
  std::vector<double> approx_;
  std::vector<double> radius_;
};

struct DirichletQuery {
  DirichletTarget z;
  std::int64_t N = 1;
  Rational lambda = 1;
  DirichletMode mode = DirichletMode::kA;
};

struct DirichletOptions {
  // Cap on the number of integer vectors q a single query may visit.
  std::uint64_t budget = 100'000'000;
  // Enclosure precision for inexact targets; doubled up to max_bits while a
  // candidate stays undecided.
  unsigned bits = 128;
  unsigned max_bits = 4096;
};

// q has n entries in mode A and one in mode B; p has one entry in mode A and
// n in mode B.
struct DirichletWitness {
  std::vector<Integer> q;
  std::vector<Integer> p;
};

struct DirichletResult {
  bool solvable = false;
  std::optional<DirichletWitness> witness;
  // Some candidate needed more than the starting precision.
  bool flagged = false;
  std::uint64_t visited = 0;
};

// Throws ConfigInvalid unless N >= 1 and 0 < lambda <= 1.
void validate(const DirichletQuery& query);

// Enumerates q directly. Witness tie-break: mode B takes the smallest q > 0;
// mode A scans q_n..q_2 from 0 upwards with q_1 ordered by the fractional
// part of q_1 z_1. Among nearest integers p a tie goes to the smaller one.
// Throws BudgetExceeded past options.budget and PrecisionExhausted when a
// candidate stays undecided at max_bits.
DirichletResult solvable_direct(const DirichletQuery& query, const DirichletOptions& options = {});

// The lattice of the Dani correspondence for exact z. Mode A: a(N) u(z)
// Z^(n+1) with a(N) = diag(N^n, N^-1, ..., N^-1), whose points are
// (N^n (q.z + p), q_1/N, ..., q_n/N). Mode B: diag(N, ..., N, N^-n) v(z)
// Z^(n+1) with v(z) = [[I, z^T], [0, 1]], whose points are
// (N (q z_1 + p_1), ..., N (q z_n + p_n), q / N^n).
Matrix<Rational> dani_matrix(const std::vector<Rational>& z, std::int64_t N, DirichletMode mode);

// A nonzero point of the Dani lattice in [-lambda, lambda]^(n+1). Needs an
// exact target.
bool solvable_lattice(const DirichletQuery& query, const EnumerationLimits& limits = {});

struct MinLambda {
  // Enclosure of the smallest lambda with a solution (lo == hi for exact z).
  Rational lo, hi;
  // The threshold is exactly 1: at lambda = 1 every witness sits on the
  // boundary of a constraint.
  bool boundary = false;
  // No q with max|q| <= N (mode A) or q <= N^n (mode B) reaches lambda <= 1.
  // Dirichlet's theorem rules this out; lo and hi then hold the best value.
  bool above_one = false;
  std::optional<DirichletWitness> witness;
};

// min over q != 0 of max(size ratio, error ratio), e.g. in mode A
// max(max|q_i| / N, N^n ||q.z||).
MinLambda min_lambda(const DirichletTarget& z, std::int64_t N, DirichletMode mode,
                     const DirichletOptions& options = {});

// An explicit finite set of N. Parsed from "a..b", "a..b:step" or a comma list.
struct NSet {
  std::vector<std::int64_t> values;
  std::string descriptor;
  static NSet parse(const std::string& text);
  static NSet range(std::int64_t lo, std::int64_t hi);
};

struct DensityRow {
  std::int64_t N = 0;
  bool solvable = false;
  std::optional<DirichletWitness> witness;
  std::optional<MinLambda> min_lambda;
  bool flagged = false;
};

struct DensityReport {
  std::string z;
  DirichletMode mode = DirichletMode::kA;
  Rational lambda;
  std::string n_set;
  std::size_t solvable = 0;
  std::size_t total = 0;
  double density = 0.0;
  // Binomial standard error sqrt(d (1 - d) / total).
  double std_error = 0.0;
  // The first (up to 100) N without a solution.
  std::vector<std::int64_t> unsolvable;
  std::vector<DensityRow> rows;
};

DensityReport density_scan(const DirichletTarget& z, const NSet& n_set, const Rational& lambda, DirichletMode mode,
                           const DirichletOptions& options = {}, bool with_min_lambda = false,
                           const Executor& exec = sequential_executor());

}  // namespace latlab
