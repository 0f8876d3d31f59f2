#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzygh/space.hpp"

namespace fuzzygh {

/// Nonempty set of point indices of one space, sorted and deduplicated.
class Subset {
 public:
  Subset(const FuzzySpace& space, std::vector<std::size_t> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (idx_.empty()) throw std::domain_error("subset must be nonempty");
    if (idx_.back() >= space.size()) throw std::out_of_range("subset index out of range for space '" + space.name() + "'");
  }

  static Subset all(const FuzzySpace& space) {
    std::vector<std::size_t> v(space.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return Subset(space, std::move(v));
  }

  static Subset from_labels(const FuzzySpace& space, const std::vector<std::string>& labels) {
    std::vector<std::size_t> v;
    for (const auto& l : labels) v.push_back(space.index_of(l));
    return Subset(space, std::move(v));
  }

  [[nodiscard]] const std::vector<std::size_t>& indices() const { return idx_; }
  [[nodiscard]] std::size_t size() const { return idx_.size(); }
  [[nodiscard]] bool contains(std::size_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

 private:
  std::vector<std::size_t> idx_;
};

/// M(x, A, t) = max over a in A of M(x, a, t).
inline double point_to_set(const FuzzySpace& space, std::size_t x, const Subset& a, double t) {
  if (!(t > 0.0)) throw std::domain_error("point_to_set: t must be positive");
  if (x >= space.size()) throw std::out_of_range("point_to_set: point index out of range");
  double best = 0.0;
  for (std::size_t i : a.indices()) best = std::max(best, space(x, i, t));
  return best;
}

/// H_M(A, B, t): the smaller of the two directed infima of point-to-set similarities.
inline double hausdorff_fuzzy(const FuzzySpace& space, const Subset& a, const Subset& b, double t) {
  if (!(t > 0.0)) throw std::domain_error("hausdorff_fuzzy: t must be positive");
  double h = 1.0;
  for (std::size_t x : a.indices()) h = std::min(h, point_to_set(space, x, b, t));
  for (std::size_t y : b.indices()) h = std::min(h, point_to_set(space, y, a, t));
  return h;
}

struct HausdorffConditions {
  bool holds = true;
  std::vector<std::size_t> uncovered_in_a;  // points of A with no partner in B above 1 - eps
  std::vector<std::size_t> uncovered_in_b;
};

/// Each point of A has a point of B with M > 1 - eps, and vice versa.
inline HausdorffConditions hausdorff_conditions(const FuzzySpace& space, const Subset& a, const Subset& b, double t,
                                                double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("hausdorff_conditions: eps must lie in (0,1)");
  if (!(t > 0.0)) throw std::domain_error("hausdorff_conditions: t must be positive");
  const double threshold = 1.0 - eps;
  HausdorffConditions out;
  for (std::size_t x : a.indices())
    if (!(point_to_set(space, x, b, t) > threshold)) out.uncovered_in_a.push_back(x);
  for (std::size_t y : b.indices())
    if (!(point_to_set(space, y, a, t) > threshold)) out.uncovered_in_b.push_back(y);
  out.holds = out.uncovered_in_a.empty() && out.uncovered_in_b.empty();
  return out;
}

}  // namespace fuzzygh
