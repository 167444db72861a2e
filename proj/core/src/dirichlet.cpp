#include "latlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "latlab/flow.hpp"

namespace latlab {

std::string mode_name(DirichletMode mode) { return mode == DirichletMode::kA ? "A" : "B"; }

DirichletMode parse_mode(const std::string& text) {
  if (text == "A" || text == "a") return DirichletMode::kA;
  if (text == "B" || text == "b") return DirichletMode::kB;
  fail(ErrorCode::kConfigInvalid, "mode must be A or B, got '" + text + "'");
}

namespace {

constexpr double kUlp = 0x1p-52;

// Upper bound on |x - fl(x)| for the double nearest to an exact rational.
double rounding_radius(const Rational& x, double approx) {
  const Rational err = abs(x - Rational(approx));
  return std::nextafter(err.get_d(), std::numeric_limits<double>::infinity());
}

Integer power(std::int64_t base, std::size_t k) {
  Integer out(1);
  for (std::size_t i = 0; i < k; ++i) out *= Integer(static_cast<long>(base));
  return out;
}

// Nearest integer, ties to the smaller one.
Integer nearest(const Rational& x) {
  Rational shifted = x - Rational(1, 2);
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

struct View {
  std::vector<Rational> lo, hi;
  bool exact = true;
};

// Enclosure of the distance from [lo, hi] to the nearest integer, with that
// integer taken at lo.
struct DistanceBounds {
  Rational lo, hi;
  Integer p;
};

DistanceBounds distance_to_integer(const Rational& lo, const Rational& hi) {
  DistanceBounds d;
  d.p = nearest(lo);
  const Rational at_lo = abs(lo - Rational(d.p));
  if (lo == hi) {
    d.lo = d.hi = at_lo;
    return d;
  }
  // ||.|| is 1-Lipschitz.
  const Rational w = hi - lo;
  d.lo = at_lo > w ? Rational(at_lo - w) : Rational(0);
  d.hi = at_lo + w;
  return d;
}

// q.z enclosure.
std::pair<Rational, Rational> dot(const std::vector<std::int64_t>& q, const View& v, std::size_t offset = 0) {
  Rational lo(0), hi(0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    const Rational c(static_cast<long>(q[i]));
    if (q[i] > 0) {
      lo += c * v.lo[i + offset];
      hi += c * v.hi[i + offset];
    } else {
      lo += c * v.hi[i + offset];
      hi += c * v.lo[i + offset];
    }
  }
  return {lo, hi};
}

enum class Verdict { kYes, kNo, kUndecided };

class Context {
 public:
  Context(const DirichletTarget& z, const DirichletOptions& opt) : z_(z), opt_(opt) {}

  const View& view(unsigned bits) {
    for (auto& [b, v] : views_)
      if (b == bits) return v;
    View v;
    v.exact = z_.is_exact();
    for (const auto& e : z_.enclose(bits)) {
      v.lo.push_back(e.lo);
      v.hi.push_back(e.hi);
    }
    views_.emplace_back(bits, std::move(v));
    return views_.back().second;
  }

  // Decides one candidate q, raising the precision while undecided.
  Verdict decide(const std::vector<std::int64_t>& q, DirichletMode mode, const Rational& eps, DirichletWitness* w,
                 bool* flagged) {
    for (unsigned bits = opt_.bits;; bits *= 2) {
      const Verdict v = decide_at(q, mode, eps, view(bits), w);
      if (v != Verdict::kUndecided) return v;
      *flagged = true;
      if (bits * 2 > opt_.max_bits)
        fail(ErrorCode::kPrecisionExhausted, "Dirichlet candidate undecided at " + std::to_string(bits) + " bits");
    }
  }

 private:
  static Verdict decide_at(const std::vector<std::int64_t>& q, DirichletMode mode, const Rational& eps, const View& v,
                           DirichletWitness* w) {
    std::vector<Integer> ps;
    bool undecided = false;
    const std::size_t n = v.lo.size();
    for (std::size_t i = 0; i < (mode == DirichletMode::kA ? 1 : n); ++i) {
      std::pair<Rational, Rational> x;
      if (mode == DirichletMode::kA) {
        x = dot(q, v);
      } else {
        const Rational c(static_cast<long>(q[0]));
        x = {c * v.lo[i], c * v.hi[i]};
      }
      const DistanceBounds d = distance_to_integer(x.first, x.second);
      if (d.lo > eps) return Verdict::kNo;
      // p is accepted only when all of [lo - p, hi - p] lies in [-eps, eps];
      // trying p outward from the nearest integer keeps the tie rule.
      const Integer base = d.p;
      std::optional<Integer> found;
      for (long k : {0L, 1L, -1L, 2L, -2L}) {
        const Integer p = base + k;
        const Rational pr(p);
        if (abs(x.first - pr) <= eps && abs(x.second - pr) <= eps) {
          if (!found || abs(x.first - pr) < abs(x.first - Rational(*found)) ||
              (abs(x.first - pr) == abs(x.first - Rational(*found)) && p < *found))
            found = p;
        }
      }
      if (!found) {
        undecided = true;
        continue;
      }
      ps.push_back(*found);
    }
    if (undecided) return Verdict::kUndecided;
    if (w) {
      w->q.clear();
      for (auto c : q) w->q.emplace_back(static_cast<long>(c));
      w->p = std::move(ps);
    }
    return Verdict::kYes;
  }

  const DirichletTarget& z_;
  const DirichletOptions& opt_;
  std::vector<std::pair<unsigned, View>> views_;
};

// Fractional parts of q_1 z_1 (doubles) for |q_1| <= qmax, sorted.
struct FracTable {
  std::vector<std::pair<double, std::int64_t>> entries;

  FracTable(double z1, std::int64_t qmax) {
    entries.reserve(static_cast<std::size_t>(2 * qmax + 1));
    for (std::int64_t q = -qmax; q <= qmax; ++q) {
      const double x = static_cast<double>(q) * z1;
      entries.emplace_back(x - std::floor(x), q);
    }
    std::sort(entries.begin(), entries.end());
  }

  // Visits q_1 with |q_1| <= qmax and circular |frac(q_1 z_1) - target| <= tol
  // in ascending order of the fractional part; stops when visit returns true.
  template <class Fn>
  bool search(double target, double tol, std::int64_t qmax, Fn&& visit) const {
    auto scan = [&](double a, double b) {
      auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(a, std::numeric_limits<std::int64_t>::min()));
      for (; it != entries.end() && it->first <= b; ++it)
        if (std::llabs(it->second) <= qmax && visit(it->second)) return true;
      return false;
    };
    if (tol >= 0.5) return scan(0.0, 1.0);
    const double a = target - tol, b = target + tol;
    if (a < 0) return scan(a + 1.0, 1.0) || scan(0.0, b);
    if (b >= 1) return scan(a, 1.0) || scan(0.0, b - 1.0);
    return scan(a, b);
  }
};

double circular_distance(double x) {
  const double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

// Margin covering double rounding in q.z for |q_i| <= qmax.
double float_margin(const DirichletTarget& z, std::int64_t qmax) {
  double m = 1.0;
  const double q = static_cast<double>(qmax);
  for (std::size_t i = 0; i < z.dim(); ++i) m += q * std::fabs(z.approx()[i]);
  double margin = 8 * kUlp * m;
  for (std::size_t i = 0; i < z.dim(); ++i) margin += q * z.approx_radius()[i];
  return 2 * margin;
}

std::uint64_t nominal_range(DirichletMode mode, std::size_t n, const Rational& qmax) {
  const double q = qmax.get_d();
  return mode == DirichletMode::kB ? static_cast<std::uint64_t>(q)
                                   : static_cast<std::uint64_t>(std::pow(2 * q + 1, static_cast<double>(n)) / 2);
}

std::int64_t to_int64(const Rational& x) {
  const Integer f = floor_integer(x);
  require(f.fits_slong_p(), ErrorCode::kBudgetExceeded, "enumeration bound does not fit in 64 bits");
  return f.get_si();
}

struct Bounds {
  Rational eps;
  std::int64_t qmax = 0;
};

Bounds query_bounds(const DirichletQuery& query) {
  const std::size_t n = query.z.dim();
  const Integer nn = power(query.N, n);
  const Integer N(static_cast<long>(query.N));
  Bounds b;
  if (query.mode == DirichletMode::kA) {
    b.eps = make_rational(query.lambda.get_num(), query.lambda.get_den() * nn);
    const Rational qm = query.lambda * Rational(N);
    b.qmax = floor_integer(qm).fits_slong_p() ? to_int64(qm) : std::numeric_limits<std::int64_t>::max();
  } else {
    b.eps = make_rational(query.lambda.get_num(), query.lambda.get_den() * N);
    const Rational qm = query.lambda * Rational(nn);
    b.qmax = floor_integer(qm).fits_slong_p() ? to_int64(qm) : std::numeric_limits<std::int64_t>::max();
  }
  return b;
}

DirichletResult direct_impl(const DirichletQuery& query, const DirichletOptions& options, const FracTable* shared) {
  validate(query);
  const std::size_t n = query.z.dim();
  const Bounds bounds = query_bounds(query);
  DirichletResult out;
  if (bounds.qmax == 0) return out;
  const std::uint64_t range = nominal_range(query.mode, n, Rational(static_cast<long>(std::min<std::int64_t>(bounds.qmax, 1L << 40))));
  if (range > options.budget)
    fail(ErrorCode::kBudgetExceeded, "enumeration range " + std::to_string(range) + " exceeds the budget " +
                                         std::to_string(options.budget));

  Context ctx(query.z, options);
  const double tol = std::nextafter(bounds.eps.get_d(), 2.0) + float_margin(query.z, bounds.qmax);
  const auto& zd = query.z.approx();
  DirichletWitness w;
  auto accept = [&](const std::vector<std::int64_t>& q) {
    if (ctx.decide(q, query.mode, bounds.eps, &w, &out.flagged) != Verdict::kYes) return false;
    out.solvable = true;
    out.witness = w;
    return true;
  };

  if (query.mode == DirichletMode::kB) {
    std::vector<std::int64_t> q(1);
    for (std::int64_t c = 1; c <= bounds.qmax; ++c) {
      ++out.visited;
      bool near = true;
      for (std::size_t i = 0; i < n && near; ++i) near = circular_distance(static_cast<double>(c) * zd[i]) <= tol;
      q[0] = c;
      if (near && accept(q)) return out;
    }
    return out;
  }

  if (n == 1) {
    std::vector<std::int64_t> q(1);
    for (std::int64_t c = 1; c <= bounds.qmax; ++c) {
      ++out.visited;
      q[0] = c;
      if (circular_distance(static_cast<double>(c) * zd[0]) <= tol && accept(q)) return out;
    }
    return out;
  }

  std::optional<FracTable> own;
  if (!shared) own.emplace(zd[0], bounds.qmax);
  const FracTable& table = shared ? *shared : *own;
  // q' = (q_2, ..., q_n) runs over [-qmax, qmax]^(n-1) with its first nonzero
  // entry positive; q' = 0 needs q_1 > 0.
  std::vector<std::int64_t> tail(n - 1, 0);
  std::vector<std::int64_t> q(n);
  for (;;) {
    std::size_t lead = 0;
    while (lead < tail.size() && tail[lead] == 0) ++lead;
    const bool zero_tail = lead == tail.size();
    if (zero_tail || tail[lead] > 0) {
      double c = 0;
      for (std::size_t i = 0; i < tail.size(); ++i) c += static_cast<double>(tail[i]) * zd[i + 1];
      const double target = -c - std::floor(-c);
      out.visited += static_cast<std::uint64_t>(2 * bounds.qmax + 1);
      std::copy(tail.begin(), tail.end(), q.begin() + 1);
      const bool found = table.search(target, tol, bounds.qmax, [&](std::int64_t q1) {
        if (zero_tail && q1 <= 0) return false;
        q[0] = q1;
        return accept(q);
      });
      if (found) return out;
    }
    // Odometer, last coordinate fastest; each coordinate runs 0, 1, .., qmax,
    // -qmax, .., -1.
    std::size_t k = tail.size();
    while (k > 0) {
      --k;
      std::int64_t& c = tail[k];
      if (c == -1) {
        c = 0;
        continue;
      }
      c = c == bounds.qmax ? -bounds.qmax : c + 1;
      break;
    }
    if (k == 0 && tail[0] == 0) break;
  }
  return out;
}

}  // namespace

DirichletTarget DirichletTarget::exact(std::vector<Rational> z) {
  require(!z.empty(), ErrorCode::kDimensionMismatch, "z must have at least one coordinate");
  DirichletTarget t;
  for (const auto& x : z) {
    t.approx_.push_back(x.get_d());
    t.radius_.push_back(rounding_radius(x, t.approx_.back()));
    t.text_.push_back(x.get_str());
  }
  t.exact_ = std::move(z);
  return t;
}

DirichletTarget DirichletTarget::expressions(std::vector<std::string> z) {
  require(!z.empty(), ErrorCode::kDimensionMismatch, "z must have at least one coordinate");
  std::vector<Rational> exact;
  for (const auto& e : z) {
    auto q = parse_real_exact(e);
    if (!q) break;
    exact.push_back(*q);
  }
  if (exact.size() == z.size()) {
    DirichletTarget t = DirichletTarget::exact(std::move(exact));
    t.text_ = std::move(z);
    return t;
  }
  DirichletTarget t;
  t.text_ = std::move(z);
  for (const auto& e : t.text_) {
    const RealEnclosure b = enclose_real(e, 128);
    const Rational mid = (b.lo + b.hi) / 2;
    t.approx_.push_back(mid.get_d());
    t.radius_.push_back(std::max(rounding_radius(b.lo, t.approx_.back()), rounding_radius(b.hi, t.approx_.back())));
  }
  return t;
}

const std::vector<Rational>& DirichletTarget::exact_values() const {
  require(exact_.has_value(), ErrorCode::kInvalidArgument, "this operation needs a rational z");
  return *exact_;
}

std::vector<RealEnclosure> DirichletTarget::enclose(unsigned bits) const {
  std::vector<RealEnclosure> out;
  if (exact_) {
    for (const auto& x : *exact_) out.push_back({x, x});
    return out;
  }
  for (const auto& e : text_) out.push_back(enclose_real(e, bits));
  return out;
}

std::string DirichletTarget::describe() const {
  std::string out = "(";
  for (std::size_t i = 0; i < text_.size(); ++i) out += (i ? ", " : "") + text_[i];
  return out + ")";
}

void validate(const DirichletQuery& query) {
  require(query.N >= 1, ErrorCode::kConfigInvalid, "N must be a positive integer");
  require(query.lambda > 0 && query.lambda <= 1, ErrorCode::kConfigInvalid, "lambda must lie in (0, 1]");
  require(query.z.dim() >= 1, ErrorCode::kConfigInvalid, "z must have at least one coordinate");
}

DirichletResult solvable_direct(const DirichletQuery& query, const DirichletOptions& options) {
  return direct_impl(query, options, nullptr);
}

Matrix<Rational> dani_matrix(const std::vector<Rational>& z, std::int64_t N, DirichletMode mode) {
  require(N >= 1, ErrorCode::kInvalidArgument, "N must be positive");
  const std::size_t n = z.size();
  const Rational big(static_cast<long>(N));
  if (mode == DirichletMode::kA) {
    return flow_apply(DiagonalFlow<Rational>(n, big), unipotent<Rational>(std::span<const Rational>(z)));
  }
  Matrix<Rational> v = Matrix<Rational>::identity(n + 1);
  for (std::size_t i = 0; i < n; ++i) v(i, n) = z[i];
  const Rational low = make_rational(Integer(1), power(N, n));
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i < n; ++i) v(i, j) *= big;
    v(n, j) *= low;
  }
  return v;
}

bool solvable_lattice(const DirichletQuery& query, const EnumerationLimits& limits) {
  validate(query);
  const auto& z = query.z.exact_values();
  const UnimodularLattice lattice = UnimodularLattice::from_group_element(dani_matrix(z, query.N, query.mode));
  return count_in_box(lattice, Box::cube(z.size() + 1, query.lambda), limits).count > 0;
}

MinLambda min_lambda(const DirichletTarget& z, std::int64_t N, DirichletMode mode, const DirichletOptions& options) {
  require(N >= 1, ErrorCode::kConfigInvalid, "N must be a positive integer");
  const std::size_t n = z.dim();
  const Integer nn = power(N, n);
  const Rational bigN(static_cast<long>(N));
  // Mode A: size ratio m / N for m = max|q_i| <= N, error ratio N^n ||q.z||.
  // Mode B: size ratio q / N^n for q <= N^n, error ratio N max ||q z_i||.
  const Rational size_den = mode == DirichletMode::kA ? bigN : Rational(nn);
  const Rational err_scale = mode == DirichletMode::kA ? Rational(nn) : bigN;
  const std::int64_t qmax = mode == DirichletMode::kA ? N : to_int64(Rational(nn));
  const std::uint64_t range = nominal_range(mode, n, Rational(static_cast<long>(qmax)));
  if (range > options.budget)
    fail(ErrorCode::kBudgetExceeded, "min_lambda range " + std::to_string(range) + " exceeds the budget " +
                                         std::to_string(options.budget));

  Context ctx(z, options);
  const View& v = ctx.view(options.bits);
  const double margin = float_margin(z, qmax) * err_scale.get_d();
  const auto& zd = z.approx();

  MinLambda out;
  bool have = false;
  double best_d = std::numeric_limits<double>::infinity();
  std::vector<Rational> lows;

  auto consider = [&](const std::vector<std::int64_t>& q, std::int64_t size) {
    const Rational size_ratio = Rational(static_cast<long>(size)) / size_den;
    // Cheap screen first.
    double err_d = 0;
    if (mode == DirichletMode::kA) {
      double x = 0;
      for (std::size_t i = 0; i < n; ++i) x += static_cast<double>(q[i]) * zd[i];
      err_d = circular_distance(x);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        err_d = std::max(err_d, circular_distance(static_cast<double>(q[0]) * zd[i]));
    }
    if (std::max(size_ratio.get_d(), err_d * err_scale.get_d() - margin) > best_d * (1 + 1e-12)) return;

    Rational err_lo(0), err_hi(0);
    std::vector<Integer> ps;
    for (std::size_t i = 0; i < (mode == DirichletMode::kA ? 1 : n); ++i) {
      std::pair<Rational, Rational> x;
      if (mode == DirichletMode::kA) {
        x = dot(q, v);
      } else {
        const Rational c(static_cast<long>(q[0]));
        x = {c * v.lo[i], c * v.hi[i]};
      }
      const DistanceBounds d = distance_to_integer(x.first, x.second);
      err_lo = std::max(err_lo, d.lo);
      err_hi = std::max(err_hi, d.hi);
      ps.push_back(d.p);
    }
    const Rational lo = std::max(size_ratio, Rational(err_lo * err_scale));
    const Rational hi = std::max(size_ratio, Rational(err_hi * err_scale));
    if (!have || lo <= out.hi) lows.push_back(lo);
    if (!have || hi < out.hi) {
      have = true;
      out.hi = hi;
      best_d = hi.get_d();
      DirichletWitness w;
      for (auto c : q) w.q.emplace_back(static_cast<long>(c));
      w.p = std::move(ps);
      out.witness = std::move(w);
    }
  };

  if (mode == DirichletMode::kB) {
    std::vector<std::int64_t> q(1);
    for (std::int64_t c = 1; c <= qmax; ++c) {
      if (have && Rational(static_cast<long>(c)) / size_den > out.hi) break;
      q[0] = c;
      consider(q, c);
    }
  } else {
    // Shells max|q_i| = m, each q up to sign (first nonzero entry positive).
    std::vector<std::int64_t> q(n);
    for (std::int64_t m = 1; m <= qmax; ++m) {
      if (have && Rational(static_cast<long>(m)) / size_den > out.hi) break;
      std::fill(q.begin(), q.end(), -m);
      for (;;) {
        std::int64_t sup = 0;
        std::size_t lead = 0;
        while (lead < n && q[lead] == 0) ++lead;
        for (auto c : q) sup = std::max<std::int64_t>(sup, std::llabs(c));
        if (sup == m && lead < n && q[lead] > 0) consider(q, m);
        std::size_t k = n;
        while (k > 0 && q[k - 1] == m) q[--k] = -m;
        if (k == 0) break;
        ++q[k - 1];
      }
    }
  }
  out.lo = out.hi;
  for (const auto& lo : lows)
    if (lo < out.lo) out.lo = lo;
  out.above_one = out.hi > 1;
  out.boundary = out.lo == 1 && out.hi == 1;
  return out;
}

NSet NSet::range(std::int64_t lo, std::int64_t hi) {
  require(lo >= 1 && lo <= hi, ErrorCode::kConfigInvalid, "N range needs 1 <= lo <= hi");
  NSet s;
  for (std::int64_t v = lo; v <= hi; ++v) s.values.push_back(v);
  s.descriptor = std::to_string(lo) + ".." + std::to_string(hi);
  return s;
}

NSet NSet::parse(const std::string& text) {
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || v < 1) fail(ErrorCode::kConfigInvalid, "bad N in '" + text + "'");
    return static_cast<std::int64_t>(v);
  };
  NSet s;
  s.descriptor = text;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    std::string rest = text.substr(dots + 2);
    std::int64_t step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = number(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const std::int64_t lo = number(text.substr(0, dots)), hi = number(rest);
    if (lo > hi) fail(ErrorCode::kConfigInvalid, "empty N range '" + text + "'");
    for (std::int64_t v = lo; v <= hi; v += step) s.values.push_back(v);
    return s;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) s.values.push_back(number(part));
  if (s.values.empty()) fail(ErrorCode::kConfigInvalid, "empty N set");
  return s;
}

DensityReport density_scan(const DirichletTarget& z, const NSet& n_set, const Rational& lambda, DirichletMode mode,
                           const DirichletOptions& options, bool with_min_lambda, const Executor& exec) {
  require(!n_set.values.empty(), ErrorCode::kConfigInvalid, "empty N set");
  DensityReport rep;
  rep.z = z.describe();
  rep.mode = mode;
  rep.lambda = lambda;
  rep.n_set = n_set.descriptor;
  rep.rows.resize(n_set.values.size());

  std::optional<FracTable> table;
  if (mode == DirichletMode::kA && z.dim() >= 2) {
    const std::int64_t top = *std::max_element(n_set.values.begin(), n_set.values.end());
    DirichletQuery probe{z, top, lambda, mode};
    validate(probe);
    const std::int64_t qmax = query_bounds(probe).qmax;
    const std::uint64_t range = nominal_range(mode, z.dim(), Rational(static_cast<long>(qmax)));
    if (range > options.budget)
      fail(ErrorCode::kBudgetExceeded, "enumeration range " + std::to_string(range) + " exceeds the budget " +
                                           std::to_string(options.budget));
    table.emplace(z.approx()[0], qmax);
  }

  std::vector<std::exception_ptr> errors(rep.rows.size());
  exec(rep.rows.size(), [&](std::size_t i) {
    try {
      DensityRow& row = rep.rows[i];
      row.N = n_set.values[i];
      const DirichletResult r = direct_impl(DirichletQuery{z, row.N, lambda, mode}, options, table ? &*table : nullptr);
      row.solvable = r.solvable;
      row.witness = r.witness;
      row.flagged = r.flagged;
      if (with_min_lambda) row.min_lambda = min_lambda(z, row.N, mode, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& row : rep.rows) {
    ++rep.total;
    if (row.solvable) {
      ++rep.solvable;
    } else if (rep.unsolvable.size() < 100) {
      rep.unsolvable.push_back(row.N);
    }
  }
  rep.density = static_cast<double>(rep.solvable) / static_cast<double>(rep.total);
  rep.std_error = std::sqrt(rep.density * (1 - rep.density) / static_cast<double>(rep.total));
  return rep;
}

}  // namespace latlab
