#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fuzzygh/detail/parallel.hpp"
#include "fuzzygh/metric.hpp"
#include "fuzzygh/tnorm.hpp"
#include "fuzzygh/value_fn.hpp"

namespace fuzzygh {

/// Sample points in t at which analytic representations are checked.
struct GridSpec {
  std::vector<double> ts;
  bool merged = false;  // representation breakpoints were merged in
  std::string source;   // "log:lo:hi:count" or "explicit"

  static GridSpec explicit_values(std::vector<double> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.empty()) throw std::invalid_argument("grid must be nonempty");
    if (!(ts.front() > 0.0)) throw std::invalid_argument("grid values must be strictly positive");
    for (double t : ts)
      if (!std::isfinite(t)) throw std::invalid_argument("grid values must be finite");
    return GridSpec{std::move(ts), false, "explicit"};
  }

  static GridSpec log(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi >= lo) || count == 0) throw std::invalid_argument("log grid needs 0 < lo <= hi and count >= 1");
    std::vector<double> ts;
    ts.reserve(count);
    if (count == 1) {
      ts.push_back(lo);
    } else {
      const double a = std::log(lo);
      const double b = std::log(hi);
      for (std::size_t k = 0; k < count; ++k) {
        ts.push_back(std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1)));
      }
      ts.front() = lo;
      ts.back() = hi;
    }
    std::ostringstream src;
    src << "log:" << lo << ':' << hi << ':' << count;
    auto g = explicit_values(std::move(ts));
    g.source = src.str();
    return g;
  }

  /// Accepts "log:<lo>:<hi>:<count>" or a comma separated list of values.
  static GridSpec parse(std::string_view text) {
    auto to_double = [](std::string_view s) {
      std::size_t used = 0;
      const std::string str(s);
      const double v = std::stod(str, &used);
      if (used != str.size()) throw std::invalid_argument("bad number '" + str + "' in grid");
      return v;
    };
    try {
      if (text.rfind("log:", 0) == 0) {
        std::vector<std::string_view> parts;
        std::size_t pos = 4;
        while (true) {
          const auto next = text.find(':', pos);
          parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
          if (next == std::string_view::npos) break;
          pos = next + 1;
        }
        if (parts.size() != 3) throw std::invalid_argument("expected log:<lo>:<hi>:<count>");
        const double count = to_double(parts[2]);
        if (count < 1 || count != std::floor(count)) throw std::invalid_argument("grid count must be a positive integer");
        return log(to_double(parts[0]), to_double(parts[1]), static_cast<std::size_t>(count));
      }
      std::vector<double> ts;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto next = text.find(',', pos);
        ts.push_back(to_double(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
      }
      return explicit_values(std::move(ts));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("invalid grid '" + std::string(text) + "': " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("invalid grid '" + std::string(text) + "': value out of range");
    }
  }

  /// Adds the given breakpoints plus one point beyond the largest, so that a
  /// piecewise constant function is sampled on every piece.
  [[nodiscard]] GridSpec merged_with(const std::vector<double>& breakpoints) const {
    GridSpec g = *this;
    if (!breakpoints.empty()) {
      g.ts.insert(g.ts.end(), breakpoints.begin(), breakpoints.end());
      g.ts.push_back(2.0 * *std::max_element(breakpoints.begin(), breakpoints.end()));
      std::sort(g.ts.begin(), g.ts.end());
      g.ts.erase(std::unique(g.ts.begin(), g.ts.end()), g.ts.end());
    }
    g.merged = true;
    return g;
  }
};

inline GridSpec default_grid() { return GridSpec::log(1e-3, 1e3, 64); }

/// A finite fuzzy metric space: points, a t-norm and one value function per
/// unordered pair of distinct points. The diagonal is implicit.
class FuzzySpace {
 public:
  FuzzySpace(std::string name, std::vector<std::string> labels, TNorm norm, std::vector<ValueFn> entries)
      : name_(std::move(name)), labels_(std::move(labels)), norm_(std::move(norm)), entries_(std::move(entries)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw std::invalid_argument("a space needs at least one point");
    if (entries_.size() != n * (n - 1) / 2) {
      throw std::invalid_argument("expected " + std::to_string(n * (n - 1) / 2) + " pair entries for " +
                                  std::to_string(n) + " points, got " + std::to_string(entries_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (!seen.insert(l).second) throw std::invalid_argument("duplicate point label '" + l + "'");
    }
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] const TNorm& norm() const { return norm_; }
  [[nodiscard]] const std::vector<ValueFn>& entries() const { return entries_; }

  [[nodiscard]] std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown point label '" + std::string(label) + "' in space '" + name_ + "'");
  }

  /// Value function of the pair {i, j}, i != j.
  [[nodiscard]] const ValueFn& entry(std::size_t i, std::size_t j) const {
    if (i == j || i >= size() || j >= size()) throw std::out_of_range("entry: need distinct valid indices");
    if (i > j) std::swap(i, j);
    return entries_[pair_index(i, j)];
  }

  /// M(i, j, t).
  [[nodiscard]] double operator()(std::size_t i, std::size_t j, double t) const {
    if (i == j) {
      if (t < 0.0) throw std::domain_error("negative t");
      return t > 0.0 ? 1.0 : 0.0;
    }
    return entry(i, j)(t);
  }

  /// Dense n x n matrix of M(., ., t).
  [[nodiscard]] std::vector<double> matrix_at(double t) const {
    const std::size_t n = size();
    std::vector<double> m(n * n, t > 0.0 ? 1.0 : 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = entries_[k++](t);
        m[i * n + j] = v;
        m[j * n + i] = v;
      }
    return m;
  }

  [[nodiscard]] std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& e : entries_) {
      const auto b = e.breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// All entries piecewise constant: breakpoint sampling is exact.
  [[nodiscard]] bool piecewise_constant() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const ValueFn& f) { return f.piecewise_constant(); });
  }

  /// All entries constant in t.
  [[nodiscard]] bool is_stationary() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const ValueFn& f) { return f.is_constant(); });
  }

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

 private:
  [[nodiscard]] std::size_t pair_index(std::size_t i, std::size_t j) const { return pair_index(i, j, size()); }

  std::string name_;
  std::vector<std::string> labels_;
  TNorm norm_;
  std::vector<ValueFn> entries_;
};

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

inline FuzzySpace make_standard_space(std::vector<std::string> labels, const DistanceMatrix& d, TNorm norm,
                                      std::string name = "standard") {
  if (labels.size() != d.size()) throw std::invalid_argument("label count does not match distance matrix");
  std::vector<ValueFn> e;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) e.push_back(ValueFn::standard(d(i, j)));
  return FuzzySpace(std::move(name), std::move(labels), std::move(norm), std::move(e));
}

inline FuzzySpace make_stationary_space(std::vector<std::string> labels, const std::vector<std::vector<double>>& values,
                                        TNorm norm, std::string name = "stationary") {
  const std::size_t n = labels.size();
  if (values.size() != n) throw std::invalid_argument("value matrix must have one row per point");
  for (const auto& row : values)
    if (row.size() != n) throw std::invalid_argument("value matrix must be square");
  std::vector<ValueFn> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = values[i][j];
      if (std::abs(c - values[j][i]) > kTol) throw std::invalid_argument("value matrix is not symmetric");
      if (c >= 1.0) {
        throw std::invalid_argument("separation violated: distinct points " + std::to_string(i) + "," +
                                    std::to_string(j) + " have constant similarity 1");
      }
      e.push_back(ValueFn::stationary(c));
    }
  return FuzzySpace(std::move(name), std::move(labels), std::move(norm), std::move(e));
}

struct StepPair {
  std::size_t i = 0;
  std::size_t j = 0;
  ValueFn fn;
};

inline FuzzySpace make_step_space(std::vector<std::string> labels, const std::vector<StepPair>& pairs, TNorm norm,
                                  std::string name = "step") {
  const std::size_t n = labels.size();
  std::vector<std::optional<ValueFn>> slots(n * (n - 1) / 2);
  for (const auto& p : pairs) {
    if (p.i == p.j || p.i >= n || p.j >= n) throw std::invalid_argument("step pair needs distinct valid indices");
    if (!p.fn.is_step()) throw std::invalid_argument("step space entries must be step functions");
    const auto k = FuzzySpace::pair_index(std::min(p.i, p.j), std::max(p.i, p.j), n);
    if (slots[k]) throw std::invalid_argument("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") given twice");
    slots[k] = p.fn;
  }
  std::vector<ValueFn> e;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw std::invalid_argument("step space is missing a pair entry");
    e.push_back(*slots[k]);
  }
  return FuzzySpace(std::move(name), std::move(labels), std::move(norm), std::move(e));
}

struct Na1Witness {
  std::size_t i = 0, j = 0, k = 0;
  double t = 0.0;
  double lhs = 0.0;  // M(i,k,t)
  double rhs = 0.0;  // M(i,j,t) * M(j,k,t)
};

struct AxiomReport {
  bool km1 = true;  // M(x,y,0) = 0, values in [0,1]
  bool km2 = true;  // separation
  bool km3 = true;  // symmetry (by storage)
  bool km5 = true;  // left continuity (by representation)
  bool na1 = true;
  bool na2 = true;
  double na1_worst_residual = std::numeric_limits<double>::infinity();
  std::optional<Na1Witness> witness;
  std::vector<std::pair<std::size_t, std::size_t>> km2_failures;
  std::optional<std::pair<std::size_t, std::size_t>> na2_failure;
  bool exact = false;  // all entries piecewise constant: checks at breakpoints are exact
  GridSpec grid;
  double tol = kTol;

  [[nodiscard]] bool passes() const { return km1 && km2 && km3 && km5 && na1 && na2; }
};

/// Verifies KM1-KM3, KM5, NA1 and NA2. Breakpoints of all entries are merged
/// into the grid; NA1 is checked over every triple of distinct points.
inline AxiomReport check_axioms(const FuzzySpace& space, const GridSpec& grid, double tol = kTol) {
  AxiomReport r;
  r.grid = grid.merged_with(space.breakpoints());
  r.exact = space.piecewise_constant();
  r.tol = tol;
  const std::size_t n = space.size();
  const auto& ts = r.grid.ts;
  const TNorm& norm = space.norm();

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const ValueFn& f = space.entries()[k];
      if (f(0.0) != 0.0) r.km1 = false;
      if (!f.separates()) {
        r.km2 = false;
        r.km2_failures.emplace_back(i, j);
      }
    }

  struct Partial {
    double worst = std::numeric_limits<double>::infinity();
    Na1Witness w;
    bool in_range = true;
  };
  const auto mats = detail::parallel_map(ts.size(), [&](std::size_t g) { return space.matrix_at(ts[g]); });
  const auto parts = detail::parallel_map(ts.size(), [&](std::size_t g) {
    Partial p;
    const auto& m = mats[g];
    for (double v : m)
      if (!(v >= 0.0 && v <= 1.0)) p.in_range = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t kk = i + 1; kk < n; ++kk)
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == kk) continue;
          const double lhs = m[i * n + kk];
          const double rhs = norm(m[i * n + j], m[j * n + kk]);
          const double res = lhs - rhs;
          if (res < p.worst) {
            p.worst = res;
            p.w = Na1Witness{i, j, kk, ts[g], lhs, rhs};
          }
        }
    return p;
  });
  for (const auto& p : parts) {
    if (!p.in_range) r.km1 = false;
    if (p.worst < r.na1_worst_residual) {
      r.na1_worst_residual = p.worst;
      r.witness = p.w;
    }
  }
  if (r.na1_worst_residual < -tol) r.na1 = false;

  for (std::size_t g = 1; g < ts.size() && r.na2; ++g)
    for (std::size_t i = 0; i < n && r.na2; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (mats[g][i * n + j] < mats[g - 1][i * n + j] - tol) {
          r.na2 = false;
          r.na2_failure = std::pair{i, j};
          break;
        }
  return r;
}

/// Smallest similarity over pairs at scale t; 1 for a single point.
inline double t_diameter(const FuzzySpace& space, double t) {
  if (!(t > 0.0)) throw std::domain_error("t_diameter: t must be positive");
  double m = 1.0;
  for (const auto& e : space.entries()) m = std::min(m, e(t));
  return m;
}

namespace detail {

inline bool equivalent_fns(const ValueFn& a, const ValueFn& b, const GridSpec& grid) {
  if (a.piecewise_constant() && b.piecewise_constant()) return same_representation(to_step(a), to_step(b));
  if (a.is_standard() && b.is_standard()) return same_representation(a, b);
  auto bps = a.breakpoints();
  const auto more = b.breakpoints();
  bps.insert(bps.end(), more.begin(), more.end());
  const auto g = grid.merged_with(bps);
  return std::all_of(g.ts.begin(), g.ts.end(), [&](double t) { return std::abs(a(t) - b(t)) <= kTol; });
}

}  // namespace detail

/// A permutation p with M_a(i,j,.) = M_b(p[i],p[j],.) for all pairs, or none.
/// Piecewise constant and standard entries are compared exactly; mixed
/// representations are compared on the grid.
inline std::optional<std::vector<std::size_t>> is_isometric(const FuzzySpace& a, const FuzzySpace& b,
                                                            const GridSpec& grid = default_grid()) {
  if (a.size() != b.size() || !(a.norm() == b.norm())) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        ok = detail::equivalent_fns(a.entry(i, j), b.entry(perm[i], perm[j]), grid);
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Isometry of the slices at a single scale t.
inline std::optional<std::vector<std::size_t>> isometric_at(const FuzzySpace& a, const FuzzySpace& b, double t,
                                                            double tol = kTol) {
  if (a.size() != b.size() || !(a.norm() == b.norm())) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j) ok = std::abs(a(i, j, t) - b(perm[i], perm[j], t)) <= tol;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace fuzzygh
