#include "latlab/lattice.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace latlab {

Box::Box(std::vector<Rational> lo_, std::vector<Rational> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  require(lo.size() == hi.size() && !lo.empty(), ErrorCode::kDimensionMismatch, "box bounds");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require(lo[i] <= hi[i], ErrorCode::kInvalidArgument, "box has lo > hi in coordinate " + std::to_string(i));
  }
}

Box Box::cube(std::size_t dim, const Rational& half_width) {
  require(half_width >= 0, ErrorCode::kInvalidArgument, "negative cube half-width");
  return Box(std::vector<Rational>(dim, Rational(-half_width)), std::vector<Rational>(dim, half_width));
}

Rational Box::volume() const {
  Rational v(1);
  for (std::size_t i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Box::contains(std::span<const Rational> v) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  return true;
}

bool Box::on_boundary(std::span<const Rational> v) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (v[i] == lo[i] || v[i] == hi[i]) return true;
  return false;
}

Rational Box::sup_radius() const {
  Rational r(0);
  for (std::size_t i = 0; i < dim(); ++i) r = std::max({r, Rational(abs(lo[i])), Rational(abs(hi[i]))});
  return r;
}

UnimodularLattice UnimodularLattice::from_basis(Matrix<Rational> rows) {
  require(rows.square() && rows.rows() >= 1, ErrorCode::kDimensionMismatch, "lattice basis must be square");
  const Rational det = determinant(rows);
  require(abs(det) == 1, ErrorCode::kNotUnimodular, "|det| = " + Rational(abs(det)).get_str() + ", expected 1");
  ReducedBasis reduced = reduce_basis(rows);
  return UnimodularLattice(std::move(rows), std::move(reduced));
}

template <class T>
UnimodularLattice UnimodularLattice::from_group_element(const Matrix<T>& g) {
  require(g.square(), ErrorCode::kDimensionMismatch, "group element must be square");
  Matrix<Rational> rows = to_exact(g.transpose());
  if constexpr (ScalarTraits<T>::exact) {
    return from_basis(std::move(rows));
  } else {
    const T det = determinant(g);
    const T off = abs_value(T(abs_value(det) - T(1)));
    require(ScalarTraits<T>::negligible(off), ErrorCode::kNotUnimodular,
            "|det| - 1 = " + ScalarTraits<T>::to_string(off) + " exceeds 2^(-precision/4)");
    ReducedBasis reduced = reduce_basis(rows);
    return UnimodularLattice(std::move(rows), std::move(reduced));
  }
}

template UnimodularLattice UnimodularLattice::from_group_element(const Matrix<Rational>&);
template UnimodularLattice UnimodularLattice::from_group_element(const Matrix<BigFloat>&);

namespace {

struct IntRange {
  Integer lo;
  Integer hi;
  bool empty() const { return lo > hi; }
  Integer size() const { return empty() ? Integer(0) : Integer(hi - lo + 1); }
};

// Enumeration plan: coefficient ranges certified by the exact inverse of the
// reduced basis, with the widest coordinate solved in closed form innermost.
struct Plan {
  const Matrix<Rational>* basis;
  std::vector<IntRange> ranges;
  std::size_t inner;
  std::vector<std::size_t> outer;
};

Plan make_plan(const UnimodularLattice& lattice, const Box& box, const EnumerationLimits& limits) {
  require(box.dim() == lattice.dim(), ErrorCode::kDimensionMismatch, "box and lattice dimensions");
  const ReducedBasis& red = lattice.reduced();
  const std::size_t m = lattice.dim();
  Plan plan{&red.basis, std::vector<IntRange>(m), 0, {}};
  // x = v B^{-1}, so x_j ranges over sum_i v_i inv(i, j) for v in the box.
  for (std::size_t j = 0; j < m; ++j) {
    Rational lo(0), hi(0);
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& c = red.inverse(i, j);
      const Rational a = box.lo[i] * c;
      const Rational b = box.hi[i] * c;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    plan.ranges[j] = IntRange{ceil_integer(lo), floor_integer(hi)};
  }
  for (std::size_t j = 1; j < m; ++j)
    if (plan.ranges[j].size() > plan.ranges[plan.inner].size()) plan.inner = j;
  Integer work(1);
  for (std::size_t j = 0; j < m; ++j) {
    if (j == plan.inner) continue;
    plan.outer.push_back(j);
    work *= plan.ranges[j].size();
  }
  if (work > Integer(static_cast<unsigned long>(limits.budget))) {
    fail(ErrorCode::kEnumerationBudgetExceeded,
         "box enumeration needs " + work.get_str() + " prefixes, budget " + std::to_string(limits.budget));
  }
  return plan;
}

// Walks every outer coefficient prefix; `body` receives the partial sum w and
// the inner coefficient range compatible with the box.
template <class Body>
void walk(const Plan& plan, const Box& box, BoxCount& stats, Body&& body) {
  const Matrix<Rational>& b = *plan.basis;
  const std::size_t m = b.rows();
  for (const auto& r : plan.ranges)
    if (r.empty()) return;

  std::vector<Integer> x(m, Integer(0));
  RowVector<Rational> w(m, Rational(0));
  for (std::size_t j : plan.outer) {
    x[j] = plan.ranges[j].lo;
    const Rational xj(x[j]);
    for (std::size_t c = 0; c < m; ++c) w[c] += xj * b(j, c);
  }

  const std::size_t in = plan.inner;
  while (true) {
    ++stats.prefixes;
    IntRange range = plan.ranges[in];
    bool feasible = true;
    for (std::size_t c = 0; c < m && feasible; ++c) {
      const Rational& step = b(in, c);
      if (step == 0) {
        feasible = box.lo[c] <= w[c] && w[c] <= box.hi[c];
        continue;
      }
      Rational a = (box.lo[c] - w[c]) / step;
      Rational z = (box.hi[c] - w[c]) / step;
      if (step < 0) std::swap(a, z);
      range.lo = std::max(range.lo, ceil_integer(a));
      range.hi = std::min(range.hi, floor_integer(z));
      feasible = !range.empty();
    }
    if (feasible && !range.empty()) body(x, w, range);

    // Odometer over the outer coordinates.
    std::size_t pos = 0;
    for (; pos < plan.outer.size(); ++pos) {
      const std::size_t j = plan.outer[pos];
      if (x[j] < plan.ranges[j].hi) {
        ++x[j];
        for (std::size_t c = 0; c < m; ++c) w[c] += b(j, c);
        break;
      }
      const Rational back(x[j] - plan.ranges[j].lo);
      for (std::size_t c = 0; c < m; ++c) w[c] -= back * b(j, c);
      x[j] = plan.ranges[j].lo;
    }
    if (pos == plan.outer.size()) break;
  }
}

bool prefix_is_zero(const Plan& plan, const std::vector<Integer>& x) {
  return std::all_of(plan.outer.begin(), plan.outer.end(), [&](std::size_t j) { return x[j] == 0; });
}

}  // namespace

void enumerate_box(const UnimodularLattice& lattice, const Box& box,
                   const std::function<void(std::span<const Rational>, std::span<const Integer>)>& visit,
                   const EnumerationLimits& limits, BoxCount* stats) {
  const Plan plan = make_plan(lattice, box, limits);
  const Matrix<Rational>& b = *plan.basis;
  BoxCount local;
  walk(plan, box, local, [&](std::vector<Integer>& x, const RowVector<Rational>& w, const IntRange& range) {
    const bool zero_prefix = prefix_is_zero(plan, x);
    RowVector<Rational> v(w.size());
    for (Integer k = range.lo; k <= range.hi; ++k) {
      if (zero_prefix && k == 0) continue;
      const Rational kk(k);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = w[c] + kk * b(plan.inner, c);
      x[plan.inner] = k;
      ++local.count;
      if (box.on_boundary(v)) ++local.boundary_points;
      visit(v, x);
    }
    x[plan.inner] = 0;
  });
  if (stats) *stats = local;
}

BoxCount count_in_box(const UnimodularLattice& lattice, const Box& box, const EnumerationLimits& limits) {
  const Plan plan = make_plan(lattice, box, limits);
  const Matrix<Rational>& b = *plan.basis;
  const std::size_t m = b.rows();
  BoxCount stats;
  walk(plan, box, stats, [&](const std::vector<Integer>& x, const RowVector<Rational>& w, const IntRange& range) {
    Integer count = range.size();
    const bool zero_in_range = prefix_is_zero(plan, x) && range.lo <= 0 && range.hi >= 0;
    if (zero_in_range) count -= 1;
    stats.count += count.get_ui();

    // Boundary points: inner coefficients where some coordinate meets a face.
    std::set<Integer> hits;
    bool all_boundary = false;
    for (std::size_t c = 0; c < m; ++c) {
      const Rational& step = b(plan.inner, c);
      if (step == 0) {
        if (w[c] == box.lo[c] || w[c] == box.hi[c]) all_boundary = true;
        continue;
      }
      for (const Rational* face : {&box.lo[c], &box.hi[c]}) {
        const Rational k = (*face - w[c]) / step;
        if (k.get_den() == 1 && k.get_num() >= range.lo && k.get_num() <= range.hi) hits.insert(k.get_num());
      }
    }
    if (zero_in_range) hits.erase(Integer(0));
    stats.boundary_points += all_boundary ? count.get_ui() : hits.size();
  });
  return stats;
}

ShortestVector shortest_vector(const UnimodularLattice& lattice, const EnumerationLimits& limits) {
  const Matrix<Rational>& red = lattice.reduced().basis;
  Rational radius = sup_norm(red.row(0));
  for (std::size_t i = 1; i < red.rows(); ++i) radius = std::min(radius, sup_norm(red.row(i)));

  // Canonical representative: first nonzero coordinate positive.
  auto canonical = [](RowVector<Rational> v) {
    for (const auto& c : v) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& e : v) e = -e;
      break;
    }
    return v;
  };

  std::optional<ShortestVector> best;
  enumerate_box(lattice, Box::cube(lattice.dim(), radius),
                [&](std::span<const Rational> v, std::span<const Integer>) {
                  const Rational len = sup_norm(v);
                  RowVector<Rational> cv = canonical(RowVector<Rational>(v.begin(), v.end()));
                  if (!best || len < best->length || (len == best->length && cv < best->vector)) {
                    best = ShortestVector{std::move(cv), len};
                  }
                },
                limits);
  require(best.has_value(), ErrorCode::kInvalidArgument, "no nonzero vector found (empty enumeration)");
  return *best;
}

}  // namespace latlab
