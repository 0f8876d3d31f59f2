#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzygh/covering.hpp"
#include "fuzzygh/hausdorff.hpp"
#include "fuzzygh/space.hpp"

namespace fuzzygh {

/// A hypothesis of a construction failed. `which` names it: "1" (floor),
/// "2" (nets), "a", "b", "strictness", "norm", "separation".
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string which, const std::string& what)
      : std::runtime_error("hypothesis (" + which + ") failed: " + what), which_(std::move(which)) {}
  [[nodiscard]] const std::string& which() const { return which_; }

 private:
  std::string which_;
};

/// A fuzzy metric on the disjoint union of two spaces that restricts to the
/// given metrics: only the cross entries are free.
class UnionMetric {
 public:
  UnionMetric(FuzzySpace left, FuzzySpace right, std::vector<ValueFn> cross)
      : left_(std::move(left)), right_(std::move(right)), cross_(std::move(cross)) {
    if (!(left_.norm() == right_.norm())) throw std::invalid_argument("union: spaces carry different t-norms");
    if (cross_.size() != left_.size() * right_.size()) throw std::invalid_argument("union: cross matrix has wrong size");
  }

  [[nodiscard]] const FuzzySpace& left() const { return left_; }
  [[nodiscard]] const FuzzySpace& right() const { return right_; }
  [[nodiscard]] const TNorm& norm() const { return left_.norm(); }
  [[nodiscard]] const std::vector<ValueFn>& cross() const { return cross_; }
  [[nodiscard]] const ValueFn& cross(std::size_t x, std::size_t y) const { return cross_.at(x * right_.size() + y); }

  /// The union as one space; left points first, labels prefixed "L:" / "R:".
  [[nodiscard]] FuzzySpace as_space() const {
    const std::size_t nl = left_.size();
    const std::size_t n = nl + right_.size();
    std::vector<std::string> labels;
    for (const auto& l : left_.labels()) labels.push_back("L:" + l);
    for (const auto& l : right_.labels()) labels.push_back("R:" + l);
    std::vector<ValueFn> e;
    e.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j < nl) e.push_back(left_.entry(i, j));
        else if (i >= nl) e.push_back(right_.entry(i - nl, j - nl));
        else e.push_back(cross(i, j - nl));
      }
    return FuzzySpace(left_.name() + "+" + right_.name(), std::move(labels), norm(), std::move(e));
  }

  [[nodiscard]] Subset left_points(const FuzzySpace& joined) const {
    std::vector<std::size_t> v(left_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return Subset(joined, std::move(v));
  }
  [[nodiscard]] Subset right_points(const FuzzySpace& joined) const {
    std::vector<std::size_t> v(right_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = left_.size() + i;
    return Subset(joined, std::move(v));
  }

  /// H_M(X, Y, t) over the full point sets.
  [[nodiscard]] double hausdorff(double t) const {
    const auto joined = as_space();
    return hausdorff_fuzzy(joined, left_points(joined), right_points(joined), t);
  }

 private:
  FuzzySpace left_;
  FuzzySpace right_;
  std::vector<ValueFn> cross_;
};

inline AxiomReport validate_union(const UnionMetric& u, const GridSpec& grid = default_grid()) {
  return check_axioms(u.as_space(), grid);
}

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::vector<double> merged_breakpoints(std::initializer_list<std::vector<double>> lists) {
  std::vector<double> out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool all_standard(const FuzzySpace& s) {
  return std::all_of(s.entries().begin(), s.entries().end(), [](const ValueFn& f) { return f.is_standard(); });
}

inline double standard_diameter(const FuzzySpace& s) {
  double d = 0.0;
  for (const auto& f : s.entries()) d = std::max(d, std::get<Standard>(f.repr()).d);
  return d;
}

}  // namespace detail

/// The largest admissible constant-gluing floor, s -> min(diam_s X, diam_s Y).
/// Exact when both spaces are standard or both piecewise constant; otherwise
/// a Step approximation from below on the grid (still a valid floor).
inline ValueFn min_diameter_envelope(const FuzzySpace& x, const FuzzySpace& y, const GridSpec& grid = default_grid()) {
  if (detail::all_standard(x) && detail::all_standard(y)) {
    const double d = std::max(detail::standard_diameter(x), detail::standard_diameter(y));
    return d > 0.0 ? ValueFn::standard(d) : ValueFn::stationary(1.0);
  }
  const auto bps = detail::merged_breakpoints({x.breakpoints(), y.breakpoints()});
  auto env = [&](double s) { return std::min(t_diameter(x, s), t_diameter(y, s)); };
  if (x.piecewise_constant() && y.piecewise_constant()) {
    std::vector<double> b;
    std::vector<double> v;
    for (double s : bps) v.push_back(env(s));
    v.push_back(env(bps.empty() ? 1.0 : 2.0 * bps.back()));
    std::vector<double> nv{v.front()};
    for (std::size_t k = 0; k < bps.size(); ++k)
      if (v[k + 1] != v[k]) {
        b.push_back(bps[k]);
        nv.push_back(v[k + 1]);
      }
    return ValueFn::step(std::move(b), std::move(nv));
  }
  const auto g = grid.merged_with(bps);
  std::vector<double> b;
  std::vector<double> v{0.0};
  for (double s : g.ts) {
    const double val = env(s);
    if (val > v.back()) {
      b.push_back(s);
      v.push_back(val);
    }
  }
  return ValueFn::step(std::move(b), std::move(v));
}

/// Constant gluing: every cross similarity equals the floor function c.
/// Requires c(s) <= min(diam_s X, diam_s Y) on the grid (exact on breakpoints).
inline UnionMetric glue_constant(const FuzzySpace& x, const FuzzySpace& y, const ValueFn& c,
                                 const GridSpec& grid = default_grid(), double tol = kTol) {
  if (!(x.norm() == y.norm())) throw HypothesisError("norm", "spaces carry different t-norms");
  const auto g = grid.merged_with(detail::merged_breakpoints({x.breakpoints(), y.breakpoints(), c.breakpoints()}));
  for (double s : g.ts) {
    const double floor_s = std::min(t_diameter(x, s), t_diameter(y, s));
    if (c(s) > floor_s + tol) {
      throw HypothesisError("1", "floor C(s) = " + detail::num(c(s)) + " exceeds min diameter " + detail::num(floor_s) +
                                     " at s = " + detail::num(s));
    }
  }
  if (!c.separates()) {
    throw HypothesisError("separation", "a floor equal to 1 for every s > 0 would identify distinct points");
  }
  return UnionMetric(x, y, std::vector<ValueFn>(x.size() * y.size(), c));
}

namespace detail {

/// M(i, j, .) as a value function, with the constant 1 on the diagonal.
inline ValueFn pair_fn(const FuzzySpace& s, std::size_t i, std::size_t j) {
  return i == j ? ValueFn::stationary(1.0) : s.entry(i, j);
}

inline bool conditions_ab(const TNorm& n, double mx, double my, double eps, double tol) {
  return mx >= n(my, 1.0 - eps) - tol && my >= n(mx, 1.0 - eps) - tol;
}

}  // namespace detail

inline constexpr double kDeltaTol = 1e-9;

/// A delta > 0 such that conditions (a) and (b) hold for s in (t - delta, t].
/// Piecewise constant pairs get the exact distance to the nearest breakpoint
/// below t (t/2 without one); analytic pairs are bisected to kDeltaTol.
inline double find_delta(const FuzzySpace& x, const FuzzySpace& y, std::size_t px, std::size_t px2, std::size_t py,
                         std::size_t py2, double t, double eps, double tol = kTol) {
  if (!(t > 0.0)) throw std::domain_error("find_delta: t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("find_delta: eps must lie in (0,1)");
  const TNorm& n = x.norm();
  const ValueFn fx = detail::pair_fn(x, px, px2);
  const ValueFn fy = detail::pair_fn(y, py, py2);
  auto holds = [&](double s) { return detail::conditions_ab(n, fx(s), fy(s), eps, tol); };
  if (!holds(t)) {
    throw HypothesisError("a/b", "conditions fail at t = " + detail::num(t) + ": M_X = " + detail::num(fx(t)) +
                                     ", M_Y = " + detail::num(fy(t)));
  }
  double cap = t / 2.0;
  double below = 0.0;
  for (const auto& f : {fx, fy})
    for (double b : f.breakpoints())
      if (b < t) below = std::max(below, b);
  if (below > 0.0) cap = t - below;
  if (fx.piecewise_constant() && fy.piecewise_constant()) return cap;

  constexpr int kProbe = 16;
  auto ok = [&](double delta) {
    for (int k = 0; k < kProbe; ++k)
      if (!holds(t - delta * k / kProbe)) return false;
    return holds(std::nextafter(t - delta, t));
  };
  if (ok(cap)) return cap;
  double lo = 0.0;
  double hi = cap;
  while (hi - lo > kDeltaTol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) {
    throw HypothesisError("strictness", "conditions (a),(b) have no slack below t = " + detail::num(t));
  }
  return lo;
}

struct MDelta {
  UnionMetric metric;
  double delta = 0.0;
  double hausdorff = 0.0;  // H over the full point sets at t
  double target = 0.0;     // (1 - eps) * (1 - eps)
  AxiomReport validation;
};

/// The two-branch gluing built from matched (t, eps)-nets:
///   cross(x, y, s) = c(s) * c(s) * (1 - eps)                          for 0 < s <= t - delta
///   cross(x, y, s) = max_j M_X(x, x_j, s) * M_Y(y, y_j, s) * (1 - eps)  for s > t - delta
/// Every hypothesis is verified first; the result is re-checked on the grid.
inline MDelta build_m_delta(const FuzzySpace& x, const FuzzySpace& y, const std::vector<std::size_t>& net_x,
                            const std::vector<std::size_t>& net_y, double t, double eps, const ValueFn& c,
                            const GridSpec& grid = default_grid(), double tol = kTol) {
  if (!(x.norm() == y.norm())) throw HypothesisError("norm", "spaces carry different t-norms");
  if (!(t > 0.0)) throw std::domain_error("build_m_delta: t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("build_m_delta: eps must lie in (0,1)");
  if (net_x.empty() || net_x.size() != net_y.size()) throw std::invalid_argument("nets must be nonempty and of equal length");
  for (auto i : net_x)
    if (i >= x.size()) throw std::out_of_range("left net index out of range");
  for (auto i : net_y)
    if (i >= y.size()) throw std::out_of_range("right net index out of range");
  const TNorm& n = x.norm();
  const std::size_t N = net_x.size();
  const auto bps = detail::merged_breakpoints({x.breakpoints(), y.breakpoints(), c.breakpoints()});
  const auto g = grid.merged_with(bps);

  for (double s : g.ts) {
    const double floor_s = std::min(t_diameter(x, s), t_diameter(y, s));
    if (c(s) > floor_s + tol) {
      throw HypothesisError("1", "floor C(s) = " + detail::num(c(s)) + " exceeds min diameter " + detail::num(floor_s) +
                                     " at s = " + detail::num(s));
    }
  }
  if (!is_net(x, net_x, t, eps)) throw HypothesisError("2", "left net is not a (t,eps)-net");
  if (!is_net(y, net_y, t, eps)) throw HypothesisError("2", "right net is not a (t,eps)-net");

  std::vector<double> above{t};
  for (double s : g.ts)
    if (s > t) above.push_back(s);
  for (double s : above)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) {
        const double mx = x(net_x[i], net_x[j], s);
        const double my = y(net_y[i], net_y[j], s);
        const std::string where = "net pair (" + std::to_string(i) + "," + std::to_string(j) + ") at s = " + detail::num(s);
        if (mx < n(my, 1.0 - eps) - tol) {
          throw HypothesisError("a", where + ": M_X = " + detail::num(mx) + " < M_Y * (1-eps) = " + detail::num(n(my, 1.0 - eps)));
        }
        if (my < n(mx, 1.0 - eps) - tol) {
          throw HypothesisError("b", where + ": M_Y = " + detail::num(my) + " < M_X * (1-eps) = " + detail::num(n(mx, 1.0 - eps)));
        }
      }

  // delta is the minimum over net pairs; a one-point net leaves it at t/2
  double delta = t;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      delta = std::min(delta, find_delta(x, y, net_x[i], net_x[j], net_y[i], net_y[j], t, eps, tol));
  if (!(delta < t)) delta = t / 2.0;

  std::vector<ValueFn> cross;
  cross.reserve(x.size() * y.size());
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < y.size(); ++q) {
      auto glued = std::make_shared<GluedFn>();
      glued->norm = n;
      glued->split = t - delta;
      glued->factor = 1.0 - eps;
      glued->floor = c;
      for (std::size_t j = 0; j < N; ++j) glued->terms.emplace_back(detail::pair_fn(x, p, net_x[j]), detail::pair_fn(y, q, net_y[j]));
      ValueFn f = ValueFn::glued(std::move(glued));
      cross.push_back(f.piecewise_constant() ? to_step(f) : f);
    }

  UnionMetric u(x, y, std::move(cross));
  auto report = validate_union(u, grid);
  const double h = u.hausdorff(t);
  return MDelta{std::move(u), delta, h, n(1.0 - eps, 1.0 - eps), std::move(report)};
}

/// Nets matched through an admissible gluing at scale t.
struct MatchedNets {
  double t = 0.0;
  double eps = 0.0;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  bool right_is_net = false;  // (t, eps*eps*eps)-net in the right space
  bool cond_a = false;        // M_X(x_i,x_j,t) >= M_Y(y_i,y_j,t) * (1-eps) * (1-eps)
  bool cond_b = false;
  bool cond_a_strict = false;
  bool cond_b_strict = false;
};

/// Matches each left net point with its most similar right point (lowest
/// index on ties) and verifies the net and closeness conditions.
inline MatchedNets extract_matched_nets(const UnionMetric& u, double t, double eps, const std::vector<std::size_t>& net_left,
                                        double tol = kTol) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("extract_matched_nets: eps must lie in (0,1)");
  const double h = u.hausdorff(t);
  if (!(h > 1.0 - eps)) {
    throw HypothesisError("H", "H_M(X,Y,t) = " + detail::num(h) + " is not > 1 - eps = " + detail::num(1.0 - eps));
  }
  const FuzzySpace& x = u.left();
  const FuzzySpace& y = u.right();
  if (!is_net(x, net_left, t, eps)) throw HypothesisError("net", "left points are not a (t,eps)-net");
  const TNorm& n = u.norm();
  MatchedNets m;
  m.t = t;
  m.eps = eps;
  m.left = net_left;
  for (std::size_t xi : net_left) {
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t q = 0; q < y.size(); ++q) {
      const double v = u.cross(xi, q)(t);
      if (v > best_v) {
        best_v = v;
        best = q;
      }
    }
    m.right.push_back(best);
  }
  const double one = 1.0 - eps;
  const double three = n(n(one, one), one);
  m.right_is_net = true;
  for (std::size_t q = 0; q < y.size() && m.right_is_net; ++q) {
    bool covered = false;
    for (std::size_t yi : m.right) covered = covered || y(q, yi, t) > three;
    m.right_is_net = covered;
  }
  m.cond_a = m.cond_b = m.cond_a_strict = m.cond_b_strict = true;
  for (std::size_t i = 0; i < m.left.size(); ++i)
    for (std::size_t j = 0; j < m.left.size(); ++j) {
      const double mx = x(m.left[i], m.left[j], t);
      const double my = y(m.right[i], m.right[j], t);
      const double ra = n(n(my, one), one);
      const double rb = n(n(mx, one), one);
      m.cond_a = m.cond_a && mx >= ra - tol;
      m.cond_b = m.cond_b && my >= rb - tol;
      m.cond_a_strict = m.cond_a_strict && mx > ra;
      m.cond_b_strict = m.cond_b_strict && my > rb;
    }
  return m;
}

/// If |a - b| < k * eps then a >= b * (1-eps) and b >= a * (1-eps), for
/// t-norms with (TN1). Returns whether that conclusion holds.
inline bool lemma_ab_check(double a, double b, double k, double eps, const TNorm& norm, double tol = kTol) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) throw std::domain_error("lemma_ab_check: a, b must lie in (0,1)");
  if (!(k > 0.0 && k < std::min(a, b))) throw std::domain_error("lemma_ab_check: need 0 < k < min(a,b)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("lemma_ab_check: eps must lie in (0,1)");
  if (!has_tn1(norm)) throw std::domain_error("lemma_ab_check: t-norm '" + norm.name() + "' lacks property (TN1)");
  return a >= norm(b, 1.0 - eps) - tol && b >= norm(a, 1.0 - eps) - tol;
}

}  // namespace fuzzygh
