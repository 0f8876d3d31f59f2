#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzygh/covering.hpp"
#include "fuzzygh/gluing.hpp"
#include "fuzzygh/metric.hpp"
#include "fuzzygh/space.hpp"

namespace fuzzygh {

inline const std::vector<double>& default_eps_schedule() {
  static const std::vector<double> s{0.5, 0.3, 0.2, 0.1, 0.05, 0.01};
  return s;
}

struct LowerBound {
  double t = 0.0;
  double value = 0.0;
  UnionMetric witness;
  std::string method;  // "constant" or "m_delta"
  std::optional<double> eps;
};

namespace detail {

/// Candidate right nets aligned with a fixed left net: all sequences in
/// Y^N that are (t, eps)-nets and satisfy (a), (b) at t. Lexicographic order.
inline std::vector<std::vector<std::size_t>> aligned_partners(const FuzzySpace& x, const FuzzySpace& y,
                                                              const std::vector<std::size_t>& net_x, double t, double eps,
                                                              std::size_t limit) {
  const std::size_t N = net_x.size();
  const std::size_t m = y.size();
  std::vector<std::vector<std::size_t>> out;
  double total = std::pow(static_cast<double>(m), static_cast<double>(N));
  if (total > static_cast<double>(limit)) return out;
  std::vector<std::size_t> seq(N, 0);
  const TNorm& n = x.norm();
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i)
      for (std::size_t j = i + 1; j < N && ok; ++j)
        ok = conditions_ab(n, x(net_x[i], net_x[j], t), y(seq[i], seq[j], t), eps, kTol);
    if (ok && is_net(y, seq, t, eps)) out.push_back(seq);
    std::size_t k = N;
    while (k > 0 && ++seq[k - 1] == m) seq[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace detail

/// Certified lower bound on M_GH(X, Y, t): the best H value over a constant
/// gluing with the min-diameter floor and, for each eps in the schedule,
/// gluings built from matched nets. Every witness passes the axiom check.
inline LowerBound mgh_lower_bound(const FuzzySpace& x, const FuzzySpace& y, double t,
                                  const std::vector<double>& schedule = default_eps_schedule(),
                                  const GridSpec& grid = default_grid(), std::size_t exact_limit = kDefaultExactLimit,
                                  std::size_t search_limit = 4096) {
  if (!(t > 0.0)) throw std::domain_error("mgh_lower_bound: t must be positive");
  if (!(x.norm() == y.norm())) throw HypothesisError("norm", "spaces carry different t-norms");
  const ValueFn env = min_diameter_envelope(x, y, grid);

  std::optional<LowerBound> best;
  auto consider = [&](UnionMetric u, double h, std::string method, std::optional<double> eps) {
    if (!best || h > best->value) best = LowerBound{t, h, std::move(u), std::move(method), eps};
  };

  try {
    auto u = glue_constant(x, y, env, grid);
    const double h = u.hausdorff(t);
    consider(std::move(u), h, "constant", std::nullopt);
  } catch (const HypothesisError&) {
    auto u = glue_constant(x, y, ValueFn::zero(), grid);
    const double h = u.hausdorff(t);
    consider(std::move(u), h, "constant", std::nullopt);
  }

  for (double eps : schedule) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("mgh_lower_bound: schedule values must lie in (0,1)");
    // Fix a minimal net on one side and search aligned partners on the other; both directions.
    for (int dir = 0; dir < 2; ++dir) {
      const FuzzySpace& a = dir == 0 ? x : y;
      const FuzzySpace& b = dir == 0 ? y : x;
      const auto net_a = find_net(a, t, eps, exact_limit).indices;
      for (const auto& net_b : detail::aligned_partners(a, b, net_a, t, eps, search_limit)) {
        try {
          const auto& nx = dir == 0 ? net_a : net_b;
          const auto& ny = dir == 0 ? net_b : net_a;
          auto md = build_m_delta(x, y, nx, ny, t, eps, env, grid);
          if (md.validation.passes()) {
            consider(std::move(md.metric), md.hausdorff, "m_delta", eps);
            break;
          }
        } catch (const HypothesisError&) {
        }
      }
    }
  }
  return std::move(*best);
}

struct UpperBound {
  double t = 0.0;
  double upper = 1.0;       // certified: M_GH(X, Y, t) <= upper
  double best_found = 0.0;  // best relaxed-feasible cell corner
  double resolution = 0.0;
  double slack = 0.0;  // upper - best_found before clamping to 1
  std::size_t variables = 0;
  std::size_t boxes_explored = 0;
  std::vector<double> incumbent;  // cross matrix (row-major) at the best cell corner
};

inline constexpr std::size_t kDefaultMaxCrossVariables = 9;

namespace detail {

struct CrossConstraint {
  enum Kind { kUpper, kLower } kind;  // kUpper: T(c_a, c_b) <= m ; kLower: c_a >= T(m, c_b)
  std::size_t a;
  std::size_t b;
  double m;
};

/// Largest u with T(u, lb) <= m, or nullopt when the norm has no closed form.
inline std::optional<double> residuum(const TNorm& n, double lb, double m) {
  switch (n.kind()) {
    case TNormKind::product: return lb > 0.0 ? std::min(1.0, m / lb) : 1.0;
    case TNormKind::lukasiewicz: return std::min(1.0, m + 1.0 - lb);
    case TNormKind::minimum: return lb <= m ? 1.0 : m;
    case TNormKind::custom: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Certified upper bound on M_GH(X, Y, t) from the single-scale relaxation:
/// any admissible metric restricted to scale t yields a cross matrix
/// c in [0,1]^(|X| x |Y|) satisfying every NA1 instance on the union, and
/// H(c) = min(min_x max_y c, min_y max_x c). The box is split into cells of
/// width h; branch and bound with interval propagation finds the best cell
/// whose box meets every constraint individually, and since H is monotone
/// and 1-Lipschitz in the sup norm, best corner value + h bounds the sup.
inline UpperBound mgh_pointwise_upper_bound(const FuzzySpace& x, const FuzzySpace& y, double t, double h = 0.01,
                                            std::size_t max_variables = kDefaultMaxCrossVariables, double tol = kTol) {
  if (!(t > 0.0)) throw std::domain_error("mgh_pointwise_upper_bound: t must be positive");
  if (!(h > 0.0 && h <= 0.5)) throw std::domain_error("mgh_pointwise_upper_bound: resolution must lie in (0, 0.5]");
  if (!(x.norm() == y.norm())) throw HypothesisError("norm", "spaces carry different t-norms");
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t nv = nx * ny;
  if (nv > max_variables) {
    throw std::length_error("mgh_pointwise_upper_bound: " + std::to_string(nv) + " cross variables exceed the limit of " +
                            std::to_string(max_variables));
  }
  const TNorm& norm = x.norm();
  const auto mx = x.matrix_at(t);
  const auto my = y.matrix_at(t);
  auto var = [ny](std::size_t p, std::size_t q) { return p * ny + q; };

  std::vector<detail::CrossConstraint> cons;
  for (std::size_t q = 0; q < ny; ++q)
    for (std::size_t p = 0; p < nx; ++p)
      for (std::size_t p2 = 0; p2 < nx; ++p2) {
        if (p == p2) continue;
        const double m = mx[p * nx + p2];
        cons.push_back({detail::CrossConstraint::kUpper, var(p, q), var(p2, q), m});
        cons.push_back({detail::CrossConstraint::kLower, var(p, q), var(p2, q), m});
      }
  for (std::size_t p = 0; p < nx; ++p)
    for (std::size_t q = 0; q < ny; ++q)
      for (std::size_t q2 = 0; q2 < ny; ++q2) {
        if (q == q2) continue;
        const double m = my[q * ny + q2];
        cons.push_back({detail::CrossConstraint::kUpper, var(p, q), var(p, q2), m});
        cons.push_back({detail::CrossConstraint::kLower, var(p, q), var(p, q2), m});
      }

  const auto cells = static_cast<long>(std::ceil(1.0 / h - 1e-9));
  auto lo_val = [h](long k) { return std::min(1.0, static_cast<double>(k) * h); };
  auto hi_val = [h](long k) { return std::min(1.0, static_cast<double>(k + 1) * h); };

  struct Box {
    std::vector<long> lo, hi;  // inclusive cell index ranges
    double bound = 0.0;
  };
  auto objective = [&](const std::vector<long>& idx) {
    double val = 1.0;
    for (std::size_t p = 0; p < nx; ++p) {
      double row = 0.0;
      for (std::size_t q = 0; q < ny; ++q) row = std::max(row, lo_val(idx[var(p, q)]));
      val = std::min(val, row);
    }
    for (std::size_t q = 0; q < ny; ++q) {
      double col = 0.0;
      for (std::size_t p = 0; p < nx; ++p) col = std::max(col, lo_val(idx[var(p, q)]));
      val = std::min(val, col);
    }
    return val;
  };
  // Shrinks the box to cells that can meet each constraint; false if empty.
  auto propagate = [&](Box& b) {
    for (int round = 0; round < 64; ++round) {
      bool changed = false;
      for (const auto& c : cons) {
        const double lb = lo_val(b.lo[c.b]);
        if (c.kind == detail::CrossConstraint::kUpper) {
          if (norm(lo_val(b.lo[c.a]), lb) > c.m + tol) return false;
          if (const auto r = detail::residuum(norm, lb, c.m)) {
            const long k = std::min(b.hi[c.a], static_cast<long>(std::floor((*r + tol) / h)));
            if (k < b.hi[c.a]) {
              b.hi[c.a] = k;
              changed = true;
            }
          }
        } else {
          const double need = norm(c.m, lb) - tol;
          if (hi_val(b.hi[c.a]) < need) return false;
          long k = b.lo[c.a];
          while (k < b.hi[c.a] && hi_val(k) < need) ++k;
          if (k > b.lo[c.a]) {
            b.lo[c.a] = k;
            changed = true;
          }
        }
        if (b.lo[c.a] > b.hi[c.a]) return false;
      }
      if (!changed) break;
    }
    return true;
  };

  UpperBound out;
  out.t = t;
  out.resolution = h;
  out.variables = nv;

  auto cmp = [](const Box& a, const Box& b) { return a.bound < b.bound; };
  std::priority_queue<Box, std::vector<Box>, decltype(cmp)> open(cmp);
  Box root{std::vector<long>(nv, 0), std::vector<long>(nv, cells - 1), 0.0};
  // The all-zero matrix satisfies every constraint, so the root is never empty.
  if (propagate(root)) {
    root.bound = objective(root.hi);
    open.push(root);
  }
  double best = -1.0;
  std::vector<long> best_idx(nv, 0);
  while (!open.empty()) {
    Box b = open.top();
    open.pop();
    ++out.boxes_explored;
    if (b.bound <= best) break;
    std::size_t split = nv;
    long width = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (b.hi[v] - b.lo[v] > width) {
        width = b.hi[v] - b.lo[v];
        split = v;
      }
    if (split == nv) {
      best = b.bound;
      best_idx = b.lo;
      break;
    }
    const long mid = b.lo[split] + width / 2;
    for (int side = 0; side < 2; ++side) {
      Box c = b;
      if (side == 0) c.hi[split] = mid;
      else c.lo[split] = mid + 1;
      if (!propagate(c)) continue;
      c.bound = objective(c.hi);
      if (c.bound > best) open.push(std::move(c));
    }
  }
  out.best_found = std::max(best, 0.0);
  out.slack = h;
  out.upper = std::min(1.0, out.best_found + h);
  for (long k : best_idx) out.incumbent.push_back(lo_val(k));
  return out;
}

struct GHBounds {
  double t = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  LowerBound lower_detail;
  UpperBound upper_detail;
};

inline GHBounds gh_bounds(const FuzzySpace& x, const FuzzySpace& y, double t, double h = 0.01,
                          const std::vector<double>& schedule = default_eps_schedule(),
                          const GridSpec& grid = default_grid(), std::size_t max_variables = kDefaultMaxCrossVariables) {
  auto lo = mgh_lower_bound(x, y, t, schedule, grid);
  auto up = mgh_pointwise_upper_bound(x, y, t, h, max_variables);
  return GHBounds{t, lo.value, up.upper, std::move(lo), std::move(up)};
}

/// Classical Gromov-Hausdorff distance: half the least distortion over all
/// correspondences, by exhaustive enumeration (|X| * |Y| <= 12).
inline double dgh_bruteforce(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  const std::size_t nx = dx.size();
  const std::size_t ny = dy.size();
  if (nx * ny > 12) {
    throw std::length_error("dgh_bruteforce: |X|*|Y| = " + std::to_string(nx * ny) +
                            " exceeds 12; use dgh_diameter_lower_bound instead");
  }
  const std::size_t bits = nx * ny;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::uint32_t mask = 1; mask < (1u << bits); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) < std::max(nx, ny)) continue;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    rel.clear();
    for (std::size_t k = 0; k < bits; ++k)
      if (mask & (1u << k)) {
        rel.emplace_back(k / ny, k % ny);
        rows |= 1u << (k / ny);
        cols |= 1u << (k % ny);
      }
    if (rows != (1u << nx) - 1 || cols != (1u << ny) - 1) continue;
    double dis = 0.0;
    for (const auto& [a, b] : rel)
      for (const auto& [c, d] : rel) dis = std::max(dis, std::abs(dx(a, c) - dy(b, d)));
    best = std::min(best, dis);
  }
  return 0.5 * best;
}

/// d_GH(X, Y) >= |diam X - diam Y| / 2.
inline double dgh_diameter_lower_bound(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  return 0.5 * std::abs(dx.diameter() - dy.diameter());
}

}  // namespace fuzzygh
