#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzygh/tnorm.hpp"

namespace fuzzygh {

/// A finite classical metric: symmetric, zero diagonal, positive off the
/// diagonal, triangle inequality. Validated on construction.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(std::vector<std::vector<double>> d, double tol = 1e-9) : d_(std::move(d)) {
    const std::size_t n = d_.size();
    if (n == 0) throw std::invalid_argument("distance matrix must have at least one point");
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i].size() != n) throw std::invalid_argument("distance matrix must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i][i] != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero (row " + std::to_string(i) + ")");
      for (std::size_t j = 0; j < n; ++j) {
        const double v = d_[i][j];
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("distances must be finite and nonnegative");
        if (i != j && v == 0.0) {
          throw std::invalid_argument("distinct points " + std::to_string(i) + "," + std::to_string(j) + " at distance 0");
        }
        if (std::abs(v - d_[j][i]) > tol) throw std::invalid_argument("distance matrix is not symmetric");
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (d_[i][k] > d_[i][j] + d_[j][k] + tol) {
            throw std::invalid_argument("triangle inequality violated for triple (" + std::to_string(i) + "," +
                                        std::to_string(j) + "," + std::to_string(k) + "): d(" + std::to_string(i) +
                                        "," + std::to_string(k) + ") > d(" + std::to_string(i) + "," +
                                        std::to_string(j) + ") + d(" + std::to_string(j) + "," + std::to_string(k) + ")");
          }
  }

  [[nodiscard]] std::size_t size() const { return d_.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return d_[i][j]; }
  [[nodiscard]] const std::vector<std::vector<double>>& rows() const { return d_; }

  [[nodiscard]] double diameter() const {
    double m = 0.0;
    for (const auto& row : d_)
      for (double v : row) m = std::max(m, v);
    return m;
  }

 private:
  std::vector<std::vector<double>> d_;
};

/// Minimum number of open balls d(c, x) < r, centered at points, covering the space.
/// Exhaustive over subsets in increasing size; intended for small n.
inline std::size_t metric_cover_number(const DistanceMatrix& d, double r) {
  const std::size_t n = d.size();
  if (n > 20) throw std::invalid_argument("metric_cover_number: at most 20 points");
  std::vector<unsigned> reach(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t x = 0; x < n; ++x)
      if (d(c, x) < r) reach[c] |= 1u << x;
  const unsigned full = n == 32 ? ~0u : (1u << n) - 1u;
  std::size_t best = n;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    unsigned covered = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (mask & (1u << c)) covered |= reach[c];
    if (covered == full) best = size;
  }
  return best;
}

}  // namespace fuzzygh
