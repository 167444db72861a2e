#include "latlab/curve.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "latlab/flow.hpp"

namespace latlab {

std::vector<std::string> CurveSpec::variable_names() const {
  if (d == 1) return {"s"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("s" + std::to_string(i));
  return names;
}

std::string CurveSpec::describe() const {
  std::ostringstream os;
  os << id << " (d=" << d << ", n=" << n << "): psi = (";
  if (polynomial()) {
    const auto names = variable_names();
    for (std::size_t i = 0; i < psi.size(); ++i) os << (i ? ", " : "") << psi[i].to_string(names);
  } else {
    os << "analytic";
  }
  os << ')';
  return os.str();
}

template <Scalar T>
bool in_domain(const CurveSpec& c, std::span<const T> s) {
  require(s.size() == c.d, ErrorCode::kDimensionMismatch, "point has wrong dimension for curve " + c.id);
  return c.domain.contains(s);
}

namespace {

template <Scalar T>
void check_domain(const CurveSpec& c, std::span<const T> s) {
  if (!in_domain(c, s)) {
    std::string where;
    for (std::size_t i = 0; i < s.size(); ++i) where += (i ? ", " : "") + ScalarTraits<T>::to_string(s[i]);
    fail(ErrorCode::kOutOfDomain, "s = (" + where + ") lies outside the domain of " + c.id);
  }
}

template <Scalar T>
void require_backend(const CurveSpec& c) {
  if constexpr (ScalarTraits<T>::exact) {
    require(c.polynomial(), ErrorCode::kInvalidArgument,
            "curve " + c.id + " is not polynomial and needs the float backend");
  }
  require(c.polynomial() || c.analytic, ErrorCode::kInvalidArgument, "curve " + c.id + " has no evaluator");
}

// Taylor rows phi^(k)(s)/k!, k = 0..order, for d = 1.
template <Scalar T>
std::vector<RowVector<T>> taylor_rows(const CurveSpec& c, const T& s, std::size_t order) {
  require(c.d == 1, ErrorCode::kBadDimensions, "jets along s need d = 1; use the twisting machinery for d >= 2");
  require_backend<T>(c);
  check_domain<T>(c, std::span<const T>(&s, 1));
  std::vector<RowVector<T>> rows(order + 1, RowVector<T>(c.dim(), T(0)));
  rows[0][0] = T(1);
  if (c.polynomial()) {
    const Rational sq = ScalarTraits<T>::to_rational(s);
    for (std::size_t i = 0; i < c.n; ++i) {
      const Polynomial moved = c.psi[i].shifted(std::span<const Rational>(&sq, 1));
      for (std::size_t k = 0; k <= order; ++k) {
        rows[k][i + 1] = from_rational<T>(moved.coefficient({static_cast<unsigned>(k)}));
      }
    }
  } else {
    if constexpr (!ScalarTraits<T>::exact) {
      const auto coeffs = c.analytic(s, order);
      for (std::size_t k = 0; k <= order; ++k)
        for (std::size_t i = 0; i < c.n; ++i) rows[k][i + 1] = coeffs[k][i];
    }
  }
  return rows;
}

}  // namespace

template <Scalar T>
RowVector<T> evaluate_phi(const CurveSpec& c, std::span<const T> s) {
  require_backend<T>(c);
  check_domain<T>(c, s);
  RowVector<T> out(c.dim(), T(0));
  out[0] = T(1);
  if (c.polynomial()) {
    for (std::size_t i = 0; i < c.n; ++i) out[i + 1] = c.psi[i].evaluate<T>(s);
  } else {
    if constexpr (!ScalarTraits<T>::exact) {
      const auto coeffs = c.analytic(s[0], 0);
      for (std::size_t i = 0; i < c.n; ++i) out[i + 1] = coeffs[0][i];
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> evaluate_Phi(const CurveSpec& c, std::span<const T> s) {
  const RowVector<T> phi = evaluate_phi<T>(c, s);
  return unipotent_lift(phi);
}

template <Scalar T>
Matrix<T> derivative_matrix(const CurveSpec& c, std::span<const T> s) {
  require(c.polynomial(), ErrorCode::kInvalidArgument, "derivative_matrix needs a polynomial curve");
  check_domain<T>(c, s);
  Matrix<T> out(c.d, c.dim());
  for (std::size_t v = 0; v < c.d; ++v)
    for (std::size_t i = 0; i < c.n; ++i) out(v, i + 1) = c.psi[i].derivative(v).template evaluate<T>(s);
  return out;
}

template <Scalar T>
Jet<T> jet_at(const CurveSpec& c, const T& s, std::size_t order) {
  require(order <= c.n + 1, ErrorCode::kInvalidArgument, "jet order exceeds n + 1");
  const auto rows = taylor_rows<T>(c, s, std::max<std::size_t>(order, 1));
  Jet<T> j;
  j.base = {s};
  const std::size_t filled = std::min(order, c.n);
  j.rows = Matrix<T>(filled + 1, c.dim());
  for (std::size_t k = 0; k <= filled; ++k) j.rows.set_row(k, rows[k]);
  if (order == c.n + 1) j.next_row = rows[c.n + 1];
  j.phi_matrix = unipotent_lift(rows[0]);
  j.dphi = Matrix<T>(c.dim(), c.dim());
  for (std::size_t i = 1; i < c.dim(); ++i) j.dphi(0, i) = rows[1][i];
  return j;
}

std::vector<RowVector<BigFloat>> central_difference_rows(const CurveSpec& c, const BigFloat& s, std::size_t order,
                                                         const BigFloat& h) {
  require(c.d == 1, ErrorCode::kBadDimensions, "numeric jets need d = 1");
  require(h > BigFloat(0), ErrorCode::kInvalidArgument, "finite-difference step must be positive");
  std::vector<RowVector<BigFloat>> rows;
  BigFloat factorial(1);
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) factorial *= BigFloat(static_cast<long>(k));
    RowVector<BigFloat> acc(c.dim(), BigFloat(0));
    Integer binom(1);
    for (std::size_t j = 0; j <= k; ++j) {
      // Node s + (k/2 - j) h.
      const BigFloat offset = BigFloat(static_cast<long>(k) - 2 * static_cast<long>(j)) * h / BigFloat(2);
      const BigFloat x = s + offset;
      const RowVector<BigFloat> f = evaluate_phi<BigFloat>(c, std::span<const BigFloat>(&x, 1));
      BigFloat w(binom, default_precision());
      if (j % 2 == 1) w = -w;
      for (std::size_t i = 0; i < f.size(); ++i) acc[i] += w * f[i];
      binom = binom * Integer(static_cast<unsigned long>(k - j)) / Integer(static_cast<unsigned long>(j + 1));
    }
    const BigFloat scale = pow(h, static_cast<long>(k)) * factorial;
    for (auto& v : acc) v /= scale;
    rows.push_back(std::move(acc));
  }
  return rows;
}

Jet<BigFloat> numeric_jet(const CurveSpec& c, const BigFloat& s, std::size_t order, const BigFloat& h) {
  require(order <= c.n + 1, ErrorCode::kInvalidArgument, "jet order exceeds n + 1");
  const BigFloat two(2), four(4), three(3);
  const auto d1 = central_difference_rows(c, s, order, h);
  const auto d2 = central_difference_rows(c, s, order, h / two);
  const auto d4 = central_difference_rows(c, s, order, h / four);
  std::vector<RowVector<BigFloat>> rows(order + 1, RowVector<BigFloat>(c.dim()));
  for (std::size_t k = 0; k <= order; ++k)
    for (std::size_t i = 0; i < c.dim(); ++i) {
      const BigFloat coarse = (four * d2[k][i] - d1[k][i]) / three;
      const BigFloat fine = (four * d4[k][i] - d2[k][i]) / three;
      const BigFloat scale = std::max(BigFloat(1), abs(fine));
      if (abs(BigFloat(coarse - fine)) > h * scale) {
        fail(ErrorCode::kNumericJetUnstable, "order " + std::to_string(k) + " coordinate " + std::to_string(i) +
                                                 ": Richardson estimates " + coarse.to_string(12) + " and " +
                                                 fine.to_string(12) + " disagree");
      }
      rows[k][i] = fine;
    }
  Jet<BigFloat> j;
  j.base = {s};
  const std::size_t filled = std::min(order, c.n);
  j.rows = Matrix<BigFloat>(filled + 1, c.dim());
  for (std::size_t k = 0; k <= filled; ++k) j.rows.set_row(k, rows[k]);
  if (order == c.n + 1) j.next_row = rows[c.n + 1];
  j.phi_matrix = evaluate_Phi<BigFloat>(c, std::span<const BigFloat>(&s, 1));
  j.dphi = Matrix<BigFloat>(c.dim(), c.dim());
  if (order >= 1)
    for (std::size_t i = 1; i < c.dim(); ++i) j.dphi(0, i) = rows[1][i];
  return j;
}

template <Scalar T>
NondegeneracyCertificate<T> nondegenerate(const Matrix<T>& rows) {
  NondegeneracyCertificate<T> cert;
  if (!rows.square()) {
    cert.det = T(0);
    cert.condition = std::numeric_limits<double>::infinity();
    return cert;
  }
  cert.det = determinant(rows);
  cert.nondegenerate = !ScalarTraits<T>::negligible(cert.det);
  if (!cert.nondegenerate) {
    cert.condition = std::numeric_limits<double>::infinity();
    return cert;
  }
  auto row_sum_norm = [](const Matrix<T>& m) {
    T best(0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      T s(0);
      for (std::size_t j = 0; j < m.cols(); ++j) s += abs_value(m(i, j));
      if (s > best) best = s;
    }
    return best;
  };
  cert.condition = to_double(T(row_sum_norm(rows) * row_sum_norm(exact_inverse(rows))));
  return cert;
}

namespace {

AnalyticTaylor transcendental_taylor() {
  return [](const BigFloat& s, std::size_t order) {
    std::vector<RowVector<BigFloat>> out(order + 1, RowVector<BigFloat>(2));
    const BigFloat sn = sin(s), cs = cos(s), ex = exp(s);
    BigFloat factorial(1);
    for (std::size_t k = 0; k <= order; ++k) {
      if (k > 0) factorial *= BigFloat(static_cast<long>(k));
      const BigFloat dsin = k % 4 == 0 ? sn : k % 4 == 1 ? cs : k % 4 == 2 ? -sn : -cs;
      BigFloat a = dsin / factorial;
      if (k == 0) a += BigFloat(2) * s;
      if (k == 1) a += BigFloat(2);
      BigFloat b = ex / factorial;
      if (k == 0) b -= BigFloat(1);
      out[k][0] = a;
      out[k][1] = b;
    }
    return out;
  };
}

std::vector<Polynomial> parse_components(const std::vector<std::string>& texts, std::size_t d) {
  CurveSpec probe;
  probe.d = d;
  const auto names = probe.variable_names();
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, names));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"moment", 1, 0, "psi(s) = (s, s^2, ..., s^n)"},
      {"affine", 1, 0, "psi(s) = (s, 2s, ..., ns), degenerate for n >= 2"},
      {"transcendental", 1, 2, "psi(s) = (sin s + 2s, exp(s) - 1), float backend only"},
      {"plane2", 2, 2, "psi(s1, s2) = (s1, s2), flat graph"},
      {"twisted2", 2, 2, "psi(s1, s2) = (s1 + s2^2, s2 + s1^2)"},
      {"paraboloid3", 2, 3, "psi(s1, s2) = (s1, s2, s1^2 + s2^2)"},
      {"saddle3", 2, 3, "psi(s1, s2) = (s1, s2, s1*s2), g = I on the degeneracy locus at 0"},
  };
  return catalog;
}

CurveSpec builtin_curve(std::string_view id, std::size_t n) {
  const auto& catalog = builtin_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const CatalogEntry& e) { return e.id == id; });
  if (it == catalog.end()) {
    std::string known;
    for (const auto& e : catalog) known += (known.empty() ? "" : ", ") + e.id;
    fail(ErrorCode::kInvalidArgument, "unknown curve '" + std::string(id) + "' (known: " + known + ")");
  }
  if (n == 0) n = it->fixed_n ? it->fixed_n : 2;
  require(it->fixed_n == 0 || it->fixed_n == n, ErrorCode::kBadDimensions,
          "curve " + it->id + " is defined for n = " + std::to_string(it->fixed_n) + " only");
  require(n >= it->d, ErrorCode::kBadDimensions, "n must be at least d");

  CurveSpec c;
  c.id = it->id;
  c.d = it->d;
  c.n = n;
  c.domain = Domain::whole(c.d);
  if (c.id == "moment" || c.id == "affine") {
    const Polynomial s = Polynomial::variable(1, 0);
    for (std::size_t i = 1; i <= n; ++i)
      c.psi.push_back(c.id == "moment" ? s.pow(static_cast<unsigned>(i)) : s * Rational(static_cast<long>(i)));
  } else if (c.id == "transcendental") {
    c.analytic = transcendental_taylor();
  } else if (c.id == "plane2") {
    c.psi = parse_components({"s1", "s2"}, 2);
  } else if (c.id == "twisted2") {
    c.psi = parse_components({"s1 + s2^2", "s2 + s1^2"}, 2);
  } else if (c.id == "paraboloid3") {
    c.psi = parse_components({"s1", "s2", "s1^2 + s2^2"}, 2);
  } else if (c.id == "saddle3") {
    c.psi = parse_components({"s1", "s2", "s1*s2"}, 2);
  }
  return c;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::pair<std::optional<Rational>, std::optional<Rational>> parse_interval(const std::string& text) {
  const auto dots = text.find("..");
  require(dots != std::string::npos, ErrorCode::kInvalidArgument, "domain interval must look like lo..hi: " + text);
  auto bound = [](const std::string& b) -> std::optional<Rational> {
    const std::string t = trim(b);
    if (t == "inf" || t == "-inf" || t == "+inf") return std::nullopt;
    return parse_rational(t);
  };
  auto lo = bound(text.substr(0, dots));
  auto hi = bound(text.substr(dots + 2));
  if (lo && hi) require(*lo < *hi, ErrorCode::kInvalidArgument, "empty domain interval " + text);
  return {lo, hi};
}

}  // namespace

CurveSpec parse_curve(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, ErrorCode::kInvalidArgument,
            "curve line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    require(!kv.contains(key), ErrorCode::kInvalidArgument, "curve key '" + key + "' given twice");
    kv[key] = trim(t.substr(eq + 1));
  }

  CurveSpec c;
  c.id = kv.contains("id") ? kv["id"] : "user";
  c.d = kv.contains("d") ? std::stoul(kv["d"]) : 1;
  require(c.d >= 1 && c.d <= 7, ErrorCode::kBadDimensions, "curve d must lie in 1..7");
  const auto names = c.variable_names();

  std::vector<std::string> components;
  if (kv.contains("psi")) {
    components = split_top_level(kv["psi"], ',');
  } else {
    for (std::size_t i = 1; kv.contains("psi" + std::to_string(i)); ++i) components.push_back(kv["psi" + std::to_string(i)]);
  }
  require(!components.empty(), ErrorCode::kInvalidArgument, "curve needs psi or psi1, psi2, ...");
  for (const auto& comp : components) {
    if (!comp.empty() && comp.front() == '[') {
      require(comp.back() == ']' && c.d == 1, ErrorCode::kInvalidArgument,
              "coefficient lists [c0, c1, ...] are for d = 1: " + comp);
      std::vector<Rational> coeffs;
      for (const auto& v : split_top_level(std::string_view(comp).substr(1, comp.size() - 2), ','))
        coeffs.push_back(parse_rational(v));
      c.psi.push_back(Polynomial::from_coefficients(coeffs));
    } else {
      c.psi.push_back(parse_polynomial(comp, names));
    }
  }
  c.n = c.psi.size();
  if (kv.contains("n")) {
    require(std::stoul(kv["n"]) == c.n, ErrorCode::kDimensionMismatch,
            "n = " + kv["n"] + " but " + std::to_string(c.n) + " psi components given");
  }
  require(c.n >= c.d, ErrorCode::kBadDimensions, "need n >= d");

  c.domain = Domain::whole(c.d);
  for (std::size_t v = 0; v < c.d; ++v) {
    const std::string key = c.d == 1 ? "domain" : "domain" + std::to_string(v + 1);
    if (!kv.contains(key)) continue;
    auto [lo, hi] = parse_interval(kv[key]);
    c.domain.lo[v] = lo;
    c.domain.hi[v] = hi;
  }
  for (const auto& [key, value] : kv) {
    const bool known = key == "id" || key == "d" || key == "n" || key == "psi" || key.rfind("psi", 0) == 0 ||
                       key.rfind("domain", 0) == 0;
    require(known, ErrorCode::kInvalidArgument, "unknown curve key '" + key + "'");
  }
  return c;
}

CurveSpec load_curve_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "cannot read curve file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_curve(buf.str());
}

#define LATLAB_INSTANTIATE(T)                                                             \
  template bool in_domain<T>(const CurveSpec&, std::span<const T>);                       \
  template RowVector<T> evaluate_phi<T>(const CurveSpec&, std::span<const T>);            \
  template Matrix<T> evaluate_Phi<T>(const CurveSpec&, std::span<const T>);               \
  template Matrix<T> derivative_matrix<T>(const CurveSpec&, std::span<const T>);          \
  template Jet<T> jet_at<T>(const CurveSpec&, const T&, std::size_t);                     \
  template NondegeneracyCertificate<T> nondegenerate<T>(const Matrix<T>&);

LATLAB_INSTANTIATE(Rational)
LATLAB_INSTANTIATE(BigFloat)
#undef LATLAB_INSTANTIATE

}  // namespace latlab
