#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzygh/tnorm.hpp"

namespace fuzzygh {

/// Piecewise constant, left-continuous: f(t) = values[k] on (b_{k-1}, b_k]
/// with b_0 = 0, and values.back() for t > breakpoints.back().
struct Step {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// f(t) = t / (t + d).
struct Standard {
  double d = 0.0;
};

/// f(t) = c for every t > 0.
struct Stationary {
  double c = 0.0;
};

class ValueFn;

/// Cross similarity of the two-sided gluing built from matched nets:
///   s <= split : floor(s) * floor(s) * factor
///   s >  split : max_j left_j(s) * right_j(s) * factor
/// Kept symbolic when an analytic (Standard) form is involved.
struct GluedFn;

class ValueFn {
 public:
  using Repr = std::variant<Step, Standard, Stationary, std::shared_ptr<const GluedFn>>;

  ValueFn() : repr_(Stationary{0.0}) {}

  static ValueFn step(std::vector<double> breakpoints, std::vector<double> values);
  static ValueFn standard(double d) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("standard: distance must be finite and >= 0");
    return ValueFn(Repr{Standard{d}});
  }
  static ValueFn stationary(double c) {
    require_unit(c, "stationary value");
    return ValueFn(Repr{Stationary{c}});
  }
  static ValueFn zero() { return stationary(0.0); }
  static ValueFn glued(std::shared_ptr<const GluedFn> g) { return ValueFn(Repr{std::move(g)}); }

  [[nodiscard]] const Repr& repr() const { return repr_; }
  [[nodiscard]] bool is_step() const { return std::holds_alternative<Step>(repr_); }
  [[nodiscard]] bool is_standard() const { return std::holds_alternative<Standard>(repr_); }
  [[nodiscard]] bool is_stationary() const { return std::holds_alternative<Stationary>(repr_); }
  [[nodiscard]] bool is_glued() const { return std::holds_alternative<std::shared_ptr<const GluedFn>>(repr_); }

  /// True when the function is piecewise constant with finitely many jumps,
  /// so that sampling at breakpoints determines it exactly.
  [[nodiscard]] bool piecewise_constant() const;

  /// True when f is constant on (0, inf).
  [[nodiscard]] bool is_constant() const;

  /// Exact value at t >= 0.
  [[nodiscard]] double operator()(double t) const;

  /// Jump locations (sorted, unique). Empty for Standard and Stationary.
  [[nodiscard]] std::vector<double> breakpoints() const;

  /// Whether f(t) < 1 for some t > 0 (separation for distinct points).
  [[nodiscard]] bool separates() const;

 private:
  explicit ValueFn(Repr r) : repr_(std::move(r)) {}
  Repr repr_;
};

struct GluedFn {
  TNorm norm;
  double split = 0.0;
  double factor = 1.0;
  ValueFn floor;
  std::vector<std::pair<ValueFn, ValueFn>> terms;

  [[nodiscard]] double operator()(double s) const {
    if (s <= 0.0) return 0.0;
    if (s <= split) {
      const double c = floor(s);
      return norm(norm(c, c), factor);
    }
    double best = 0.0;
    for (const auto& [a, b] : terms) best = std::max(best, norm(norm(a(s), b(s)), factor));
    return best;
  }
};

inline ValueFn ValueFn::step(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("step: expected " + std::to_string(breakpoints.size() + 1) +
                                " values for " + std::to_string(breakpoints.size()) +
                                " breakpoints, got " + std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > 0.0) || !std::isfinite(breakpoints[k])) {
      throw std::invalid_argument("step: breakpoints must be positive and finite");
    }
    if (k > 0 && !(breakpoints[k] > breakpoints[k - 1])) {
      throw std::invalid_argument("step: breakpoints must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    require_unit(values[k], "step value");
    if (k > 0 && values[k] < values[k - 1]) {
      throw std::invalid_argument("step: values must be nondecreasing (value " + std::to_string(k) +
                                  " is " + std::to_string(values[k]) + " < " +
                                  std::to_string(values[k - 1]) + ")");
    }
  }
  return ValueFn(Repr{Step{std::move(breakpoints), std::move(values)}});
}

inline double ValueFn::operator()(double t) const {
  if (t < 0.0 || std::isnan(t)) throw std::domain_error("value function evaluated at negative t");
  if (t == 0.0) return 0.0;
  return std::visit(
      [t](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Step>) {
          const auto it = std::lower_bound(r.breakpoints.begin(), r.breakpoints.end(), t);
          return r.values[static_cast<std::size_t>(it - r.breakpoints.begin())];
        } else if constexpr (std::is_same_v<R, Standard>) {
          return t / (t + r.d);
        } else if constexpr (std::is_same_v<R, Stationary>) {
          return r.c;
        } else {
          return (*r)(t);
        }
      },
      repr_);
}

inline bool ValueFn::piecewise_constant() const {
  return std::visit(
      [](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Step> || std::is_same_v<R, Stationary>) {
          return true;
        } else if constexpr (std::is_same_v<R, Standard>) {
          return false;
        } else {
          if (!r->floor.piecewise_constant()) return false;
          return std::all_of(r->terms.begin(), r->terms.end(), [](const auto& p) {
            return p.first.piecewise_constant() && p.second.piecewise_constant();
          });
        }
      },
      repr_);
}

inline bool ValueFn::is_constant() const {
  if (is_stationary()) return true;
  if (const auto* s = std::get_if<Step>(&repr_)) {
    return std::all_of(s->values.begin(), s->values.end(), [&](double v) { return v == s->values.front(); });
  }
  if (const auto* d = std::get_if<Standard>(&repr_)) return d->d == 0.0;
  return false;
}

inline std::vector<double> ValueFn::breakpoints() const {
  std::vector<double> out;
  std::visit(
      [&out](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Step>) {
          out = r.breakpoints;
        } else if constexpr (std::is_same_v<R, std::shared_ptr<const GluedFn>>) {
          out = r->floor.breakpoints();
          out.push_back(r->split);
          for (const auto& [a, b] : r->terms) {
            for (double x : a.breakpoints()) out.push_back(x);
            for (double x : b.breakpoints()) out.push_back(x);
          }
        }
      },
      repr_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool ValueFn::separates() const {
  return std::visit(
      [](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Step>) {
          return std::any_of(r.values.begin(), r.values.end(), [](double v) { return v < 1.0; });
        } else if constexpr (std::is_same_v<R, Standard>) {
          return r.d > 0.0;
        } else if constexpr (std::is_same_v<R, Stationary>) {
          return r.c < 1.0;
        } else {
          // nondecreasing: the infimum sits just above zero
          return (*r)(std::numeric_limits<double>::min()) < 1.0;
        }
      },
      repr_);
}

/// Checked evaluation.
inline double vf_eval(const ValueFn& f, double t) { return f(t); }

/// Exact conversion of a piecewise constant function to a Step.
inline ValueFn to_step(const ValueFn& f) {
  if (!f.piecewise_constant()) throw std::invalid_argument("to_step: function is not piecewise constant");
  if (f.is_step()) return f;
  auto bps = f.breakpoints();
  std::vector<double> vals;
  vals.reserve(bps.size() + 1);
  for (double b : bps) vals.push_back(f(b));
  vals.push_back(f(bps.empty() ? 1.0 : 2.0 * bps.back()));
  // Merge pieces with equal values so the representation stays minimal.
  std::vector<double> nb;
  std::vector<double> nv;
  for (std::size_t k = 0; k < bps.size(); ++k) {
    if (vals[k] != vals[k + 1]) {
      nb.push_back(bps[k]);
      nv.push_back(vals[k]);
    }
  }
  nv.push_back(vals.back());
  return ValueFn::step(std::move(nb), std::move(nv));
}

/// Step approximation from below on a sorted positive sample grid:
/// the value on (g_{k-1}, g_k] is f(g_{k-1}) (0 on the first piece).
inline ValueFn step_from_below(const ValueFn& f, const std::vector<double>& grid) {
  std::vector<double> b;
  std::vector<double> v{0.0};
  for (double g : grid) {
    const double val = std::min(f(g), 1.0);
    if (val != v.back()) {
      b.push_back(g);
      v.push_back(std::max(val, v.back()));
    }
  }
  return ValueFn::step(std::move(b), std::move(v));
}

/// Structural equality of representations within tolerance.
inline bool same_representation(const ValueFn& a, const ValueFn& b, double tol = kTol) {
  if (a.repr().index() != b.repr().index()) return false;
  if (const auto* s = std::get_if<Step>(&a.repr())) {
    const auto& t = std::get<Step>(b.repr());
    if (s->breakpoints.size() != t.breakpoints.size()) return false;
    for (std::size_t k = 0; k < s->breakpoints.size(); ++k)
      if (std::abs(s->breakpoints[k] - t.breakpoints[k]) > tol) return false;
    for (std::size_t k = 0; k < s->values.size(); ++k)
      if (std::abs(s->values[k] - t.values[k]) > tol) return false;
    return true;
  }
  if (const auto* s = std::get_if<Standard>(&a.repr())) return std::abs(s->d - std::get<Standard>(b.repr()).d) <= tol;
  if (const auto* s = std::get_if<Stationary>(&a.repr())) return std::abs(s->c - std::get<Stationary>(b.repr()).c) <= tol;
  return std::get<3>(a.repr()) == std::get<3>(b.repr());
}

}  // namespace fuzzygh
