#pragma once

// Independent reference computations used to check the library. They share
// no code with include/fuzzygh beyond plain containers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// Random finite metric: random weights in [lo, hi] closed under shortest paths.
inline Matrix random_metric(std::mt19937_64& rng, std::size_t n, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> w(lo, hi);
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double diameter(const Matrix& d) {
  double m = 0.0;
  for (const auto& row : d)
    for (double v : row) m = std::max(m, v);
  return m;
}

/// Classical Hausdorff distance between index sets of one metric.
inline double hausdorff(const Matrix& d, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto directed = [&](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
    double worst = 0.0;
    for (auto x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (auto y : q) best = std::min(best, d[x][y]);
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Fewest open balls d(c, x) < r centered at points that cover the space.
inline std::size_t metric_cover(const Matrix& d, double r) {
  const std::size_t n = d.size();
  std::size_t best = n;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountl(mask));
    if (size >= best) continue;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      bool hit = false;
      for (std::size_t c = 0; c < n && !hit; ++c) hit = ((mask >> c) & 1UL) && d[c][x] < r;
      ok = hit;
    }
    if (ok) best = size;
  }
  return best;
}

/// Half the least distortion over all correspondences, enumerating every
/// relation R subset of X x Y (|X| * |Y| <= 16).
inline double gromov_hausdorff(const Matrix& dx, const Matrix& dy) {
  const std::size_t nx = dx.size(), ny = dy.size(), cells = nx * ny;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned long rel = 1; rel < (1UL << cells); ++rel) {
    std::vector<bool> cx(nx, false), cy(ny, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t c = 0; c < cells; ++c)
      if ((rel >> c) & 1UL) {
        cx[c / ny] = cy[c % ny] = true;
        pairs.emplace_back(c / ny, c % ny);
      }
    if (std::find(cx.begin(), cx.end(), false) != cx.end() || std::find(cy.begin(), cy.end(), false) != cy.end()) continue;
    double dis = 0.0;
    for (auto [x, y] : pairs)
      for (auto [u, v] : pairs) dis = std::max(dis, std::abs(dx[x][u] - dy[y][v]));
    best = std::min(best, dis);
  }
  return best / 2.0;
}

/// floor(a / b) for positive doubles, settled by the sign of the exact
/// residual k*b - a (a single fused rounding).
inline long floor_div(double a, double b) {
  auto k = static_cast<long>(a / b);
  while (k > 0 && std::fma(static_cast<double>(k), b, -a) > 0.0) --k;
  while (std::fma(static_cast<double>(k + 1), b, -a) <= 0.0) ++k;
  return k;
}

inline double tnorm(int kind, double a, double b) {
  switch (kind) {
    case 0: return std::min(a, b);
    case 1: return a * b;
    default: return std::max(a + b - 1.0, 0.0);
  }
}

}  // namespace oracle
