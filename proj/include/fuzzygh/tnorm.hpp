#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzygh {

/// Absolute tolerance used by every property check in the library.
inline constexpr double kTol = 1e-12;

enum class TNormKind { minimum, product, lukasiewicz, custom };

inline std::string_view to_string(TNormKind k) {
  switch (k) {
    case TNormKind::minimum: return "minimum";
    case TNormKind::product: return "product";
    case TNormKind::lukasiewicz: return "lukasiewicz";
    case TNormKind::custom: return "custom";
  }
  return "custom";
}

inline void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(v));
  }
}

struct TNormAxiomReport {
  double commutativity = 0.0;
  double associativity = 0.0;
  double identity = 0.0;
  double monotonicity = 0.0;
  double closure = 0.0;  // distance outside [0,1]

  [[nodiscard]] bool passes(double tol = kTol) const {
    return commutativity <= tol && associativity <= tol && identity <= tol &&
           monotonicity <= tol && closure <= tol;
  }
};

class TNorm;
TNormAxiomReport tn_check_axioms(const TNorm& norm, std::span<const double> grid);

/// A continuous t-norm. The three built-in kinds are evaluated in closed form;
/// user-supplied norms must pass tn_check_axioms on construction.
class TNorm {
 public:
  using Fn = std::function<double(double, double)>;

  constexpr TNorm() = default;
  explicit TNorm(TNormKind kind) : kind_(kind) {
    if (kind == TNormKind::custom) {
      throw std::invalid_argument("custom t-norms must be built with TNorm::custom");
    }
  }

  static TNorm minimum() { return TNorm(TNormKind::minimum); }
  static TNorm product() { return TNorm(TNormKind::product); }
  static TNorm lukasiewicz() { return TNorm(TNormKind::lukasiewicz); }

  /// Wraps a user callable after verifying the t-norm axioms on `grid`.
  static TNorm custom(std::string name, Fn fn, std::span<const double> grid);

  static TNorm parse(std::string_view name) {
    if (name == "minimum") return minimum();
    if (name == "product") return product();
    if (name == "lukasiewicz") return lukasiewicz();
    throw std::invalid_argument("unknown t-norm '" + std::string(name) +
                                "' (expected minimum, product or lukasiewicz)");
  }

  [[nodiscard]] TNormKind kind() const { return kind_; }
  [[nodiscard]] std::string name() const {
    return kind_ == TNormKind::custom ? custom_->name : std::string(to_string(kind_));
  }

  /// Unchecked evaluation; arguments are assumed to be in [0,1].
  [[nodiscard]] double apply(double a, double b) const {
    switch (kind_) {
      case TNormKind::minimum: return std::min(a, b);
      case TNormKind::product: return a * b;
      case TNormKind::lukasiewicz: return std::max(a + b - 1.0, 0.0);
      case TNormKind::custom: return custom_->fn(a, b);
    }
    return 0.0;
  }

  [[nodiscard]] double operator()(double a, double b) const { return apply(a, b); }

  /// Left fold a * b * c * ... ; the empty fold is the identity 1.
  [[nodiscard]] double fold(std::initializer_list<double> xs) const {
    double acc = 1.0;
    for (double x : xs) acc = apply(acc, x);
    return acc;
  }

  friend bool operator==(const TNorm& a, const TNorm& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != TNormKind::custom || a.custom_ == b.custom_;
  }

 private:
  struct Custom {
    std::string name;
    Fn fn;
  };

  TNormKind kind_ = TNormKind::product;
  std::shared_ptr<const Custom> custom_;
};

/// Checked evaluation: both arguments must be in [0,1].
inline double tn_eval(const TNorm& norm, double a, double b) {
  require_unit(a, "t-norm argument a");
  require_unit(b, "t-norm argument b");
  return norm.apply(a, b);
}

/// Worst residual of each t-norm axiom over all grid pairs and triples.
inline TNormAxiomReport tn_check_axioms(const TNorm& norm, std::span<const double> grid) {
  if (grid.empty()) throw std::domain_error("tn_check_axioms: grid must be nonempty");
  for (double v : grid) require_unit(v, "grid value");
  TNormAxiomReport r;
  for (double a : grid) {
    r.identity = std::max(r.identity, std::abs(norm(a, 1.0) - a));
    for (double b : grid) {
      const double ab = norm(a, b);
      r.closure = std::max(r.closure, std::max(0.0 - ab, ab - 1.0));
      r.commutativity = std::max(r.commutativity, std::abs(ab - norm(b, a)));
      for (double c : grid) {
        r.associativity = std::max(r.associativity, std::abs(norm(ab, c) - norm(a, norm(b, c))));
        if (b <= c) r.monotonicity = std::max(r.monotonicity, ab - norm(a, c));
      }
    }
  }
  return r;
}

inline TNorm TNorm::custom(std::string name, Fn fn, std::span<const double> grid) {
  TNorm t;
  t.kind_ = TNormKind::custom;
  t.custom_ = std::make_shared<const Custom>(Custom{std::move(name), std::move(fn)});
  const auto report = tn_check_axioms(t, grid);
  if (!report.passes()) {
    throw std::invalid_argument("custom t-norm '" + t.name() + "' fails the t-norm axioms");
  }
  return t;
}

/// Evenly spaced samples 0, step, 2*step, ..., 1 (1 always included).
inline std::vector<double> unit_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::domain_error("unit_grid: step must be in (0,1]");
  const auto n = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> g;
  g.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.push_back(std::min(1.0, static_cast<double>(i) * step));
  if (g.back() < 1.0) g.push_back(1.0);
  return g;
}

/// All ordered pairs of a sample grid.
inline std::vector<std::pair<double, double>> grid_pairs(std::span<const double> g) {
  std::vector<std::pair<double, double>> out;
  out.reserve(g.size() * g.size());
  for (double a : g)
    for (double b : g) out.emplace_back(a, b);
  return out;
}

struct PairCheck {
  bool holds = true;
  std::optional<std::pair<double, double>> witness;
  double worst_residual = 0.0;
};

/// Property (TN1): a - a*b >= a*(1-b). On failure the witness is the sample
/// pair with the largest violation (first such pair on ties).
inline PairCheck tn_has_tn1(const TNorm& norm, std::span<const std::pair<double, double>> samples) {
  PairCheck out;
  for (auto [a, b] : samples) {
    require_unit(a, "sample a");
    require_unit(b, "sample b");
    const double residual = (a - norm(a, b)) - norm(a, 1.0 - b);
    if (residual < out.worst_residual) {
      out.worst_residual = residual;
      if (residual < -kTol) {
        out.holds = false;
        out.witness = std::pair{a, b};
      }
    }
  }
  return out;
}

/// Pointwise ordering weaker <= stronger on the samples; witness as in tn_has_tn1.
inline PairCheck tn_leq(const TNorm& weaker, const TNorm& stronger,
                        std::span<const std::pair<double, double>> samples) {
  PairCheck out;
  for (auto [a, b] : samples) {
    require_unit(a, "sample a");
    require_unit(b, "sample b");
    const double residual = stronger(a, b) - weaker(a, b);
    if (residual < out.worst_residual) {
      out.worst_residual = residual;
      if (residual < -kTol) {
        out.holds = false;
        out.witness = std::pair{a, b};
      }
    }
  }
  return out;
}

/// Cached TN1 verdict on the 0.01 grid; custom norms are checked on demand.
inline bool has_tn1(const TNorm& norm) {
  switch (norm.kind()) {
    case TNormKind::product:
    case TNormKind::lukasiewicz: return true;
    case TNormKind::minimum: return false;
    case TNormKind::custom: {
      const auto g = unit_grid(0.01);
      const auto pairs = grid_pairs(g);
      return tn_has_tn1(norm, pairs).holds;
    }
  }
  return false;
}

}  // namespace fuzzygh
