#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzygh/covering.hpp"
#include "fuzzygh/ghdist.hpp"
#include "fuzzygh/gluing.hpp"
#include "fuzzygh/metric.hpp"
#include "fuzzygh/space.hpp"

namespace fuzzygh {

/// An ordered finite family of spaces with an optional shared diameter floor
/// C(s) and optional indexed nets of common length.
struct SequenceFamily {
  std::vector<FuzzySpace> spaces;
  std::optional<ValueFn> floor;
  std::optional<std::vector<std::vector<std::size_t>>> nets;

  void validate() const {
    if (spaces.empty()) throw std::invalid_argument("family must contain at least one space");
    for (const auto& s : spaces)
      if (!(s.norm() == spaces.front().norm())) throw std::invalid_argument("family members carry different t-norms");
    if (nets) {
      if (nets->size() != spaces.size()) throw std::invalid_argument("family needs exactly one net per space");
      for (std::size_t n = 0; n < spaces.size(); ++n) {
        if ((*nets)[n].size() != nets->front().size() || (*nets)[n].empty()) {
          throw std::invalid_argument("family nets must be nonempty and share one length");
        }
        for (auto i : (*nets)[n])
          if (i >= spaces[n].size()) throw std::out_of_range("net index out of range in space " + std::to_string(n));
      }
    }
  }

  [[nodiscard]] const TNorm& norm() const { return spaces.front().norm(); }

  [[nodiscard]] std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& s : spaces) {
      const auto b = s.breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    if (floor) {
      const auto b = floor->breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// floor(a / b) computed on the exact quotient of the two doubles.
inline long exact_floor_div(double a, double b) {
  const double mod = std::fmod(a, b);
  double div = (a - mod) / b;
  if (mod != 0.0 && ((b < 0.0) != (mod < 0.0))) div -= 1.0;
  return static_cast<long>(std::llround(div));
}

struct FloorViolation {
  std::size_t space = 0;
  double s = 0.0;
  double floor = 0.0;
  double diameter = 0.0;
};

struct FloorReport {
  bool pass = true;
  bool positive = true;
  double worst_slack = std::numeric_limits<double>::infinity();  // min of diam_s - C(s)
  std::vector<FloorViolation> violations;
  GridSpec grid;
};

/// 0 < C(s) <= diam_s(X_n) for every grid s and every member.
inline FloorReport check_diameter_floor(const SequenceFamily& family, const GridSpec& grid = default_grid(),
                                        double tol = kTol) {
  family.validate();
  if (!family.floor) throw std::invalid_argument("check_diameter_floor: family has no floor function");
  FloorReport r;
  r.grid = grid.merged_with(family.breakpoints());
  const ValueFn& c = *family.floor;
  for (double s : r.grid.ts) {
    const double cs = c(s);
    if (!(cs > 0.0)) {
      r.positive = false;
      r.pass = false;
    }
    for (std::size_t n = 0; n < family.spaces.size(); ++n) {
      const double d = t_diameter(family.spaces[n], s);
      r.worst_slack = std::min(r.worst_slack, d - cs);
      if (cs > d + tol) {
        r.pass = false;
        r.violations.push_back({n, s, cs, d});
      }
    }
  }
  return r;
}

/// Default sampling for the ratio condition: 32 log-spaced points in (t, 100 t]
/// plus every breakpoint above t (and one past the largest).
inline GridSpec ratio_grid(const SequenceFamily& family, double t) {
  std::vector<double> ts;
  const double lo = std::log(t);
  const double hi = std::log(100.0 * t);
  for (int k = 1; k <= 32; ++k) ts.push_back(std::exp(lo + (hi - lo) * k / 32.0));
  ts.back() = 100.0 * t;
  const auto bps = family.breakpoints();
  for (double b : bps)
    if (b > t) ts.push_back(b);
  if (!bps.empty() && bps.back() > t) ts.push_back(2.0 * bps.back());
  auto g = GridSpec::explicit_values(std::move(ts));
  g.source = "ratio";
  g.merged = true;
  return g;
}

struct RatioWitness {
  std::size_t n = 0, m = 0, i = 0, j = 0;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct RatioReport {
  bool general_pass = true;  // M_n(s)/[M_m(s)*(1-eps)] >= M_n(t)/[M_m(t)*(1-eps)]
  bool product_pass = true;  // M_n(s)/M_m(s) >= M_n(t)/M_m(t)
  std::optional<RatioWitness> general_witness;
  std::optional<RatioWitness> product_witness;
  std::size_t instances = 0;  // (n, m, i, j, s) with M_n(s) < M_m(s)
  GridSpec s_grid;
};

/// Ratio monotonicity of net similarities for s > t on the sampled grid,
/// over the registered nets only.
inline RatioReport check_ratio_condition(const SequenceFamily& family, double t, double eps,
                                         const std::optional<GridSpec>& s_grid = std::nullopt, double tol = kTol) {
  family.validate();
  if (!family.nets) throw std::invalid_argument("check_ratio_condition: family has no registered nets");
  if (!(t > 0.0)) throw std::domain_error("check_ratio_condition: t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("check_ratio_condition: eps must lie in (0,1)");
  RatioReport r;
  r.s_grid = s_grid ? *s_grid : ratio_grid(family, t);
  const TNorm& norm = family.norm();
  const auto& nets = *family.nets;
  const std::size_t N = nets.front().size();
  const std::size_t count = family.spaces.size();
  auto sim = [&](std::size_t n, std::size_t i, std::size_t j, double s) {
    return family.spaces[n](nets[n][i], nets[n][j], s);
  };
  for (std::size_t n = 0; n < count; ++n)
    for (std::size_t m = 0; m < count; ++m) {
      if (n == m) continue;
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
          for (double s : r.s_grid.ts) {
            if (!(s > t)) continue;
            const double ns = sim(n, i, j, s);
            const double ms = sim(m, i, j, s);
            if (!(ns < ms)) continue;
            ++r.instances;
            const double nt = sim(n, i, j, t);
            const double mt = sim(m, i, j, t);
            const double ds = norm(ms, 1.0 - eps);
            const double dt = norm(mt, 1.0 - eps);
            if (ds == 0.0 || dt == 0.0 || mt == 0.0) {
              throw std::domain_error("check_ratio_condition: zero denominator for spaces (" + std::to_string(n) + "," +
                                      std::to_string(m) + "); the diameter floor is violated");
            }
            const double lhs = ns / ds;
            const double rhs = nt / dt;
            if (lhs < rhs - tol && r.general_pass) {
              r.general_pass = false;
              r.general_witness = RatioWitness{n, m, i, j, s, lhs, rhs};
            }
            const double plhs = ns / ms;
            const double prhs = nt / mt;
            if (plhs < prhs - tol && r.product_pass) {
              r.product_pass = false;
              r.product_witness = RatioWitness{n, m, i, j, s, plhs, prhs};
            }
          }
    }
  return r;
}

struct PigeonholeTable {
  double t = 0.0;
  double eps = 0.0;
  double cell_width = 0.0;                       // C(t) * eps
  std::vector<std::vector<long>> matrices;       // A^n, row-major N x N
  std::vector<std::vector<std::size_t>> groups;  // by first member
  std::vector<std::size_t> selected;
};

/// Groups the members by their matrices of integer parts
/// A^n_ij = floor(M_n(x_i, x_j, t) / (C(t) * eps)) and selects the largest
/// group (ties: the one containing the smallest index).
inline PigeonholeTable pigeonhole_subsequence(const SequenceFamily& family, double t, double eps) {
  family.validate();
  if (!family.floor || !family.nets) throw std::invalid_argument("pigeonhole_subsequence: floor and nets are required");
  if (!(t > 0.0)) throw std::domain_error("pigeonhole_subsequence: t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("pigeonhole_subsequence: eps must lie in (0,1)");
  PigeonholeTable tab;
  tab.t = t;
  tab.eps = eps;
  tab.cell_width = family.norm()((*family.floor)(t), eps);
  if (!(tab.cell_width > 0.0)) throw std::domain_error("pigeonhole_subsequence: cell width C(t)*eps is zero");
  const auto& nets = *family.nets;
  const std::size_t N = nets.front().size();
  std::map<std::vector<long>, std::size_t> slot;
  for (std::size_t n = 0; n < family.spaces.size(); ++n) {
    std::vector<long> a(N * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        a[i * N + j] = exact_floor_div(family.spaces[n](nets[n][i], nets[n][j], t), tab.cell_width);
    auto [it, inserted] = slot.emplace(a, tab.groups.size());
    if (inserted) tab.groups.emplace_back();
    tab.groups[it->second].push_back(n);
    tab.matrices.push_back(std::move(a));
  }
  for (const auto& g : tab.groups)
    if (g.size() > tab.selected.size()) tab.selected = g;
  return tab;
}

struct PairCertificate {
  std::size_t n = 0;
  std::size_t m = 0;
  bool ok = false;
  double hausdorff = 0.0;
  double delta = 0.0;
  std::string error;
};

struct GroupCertificate {
  double target = 0.0;  // (1-eps) * (1-eps)
  bool all_ok = true;
  std::vector<PairCertificate> pairs;
};

/// Builds the two-branch gluing for every pair of the group and records the
/// achieved H values; each must exceed (1-eps)*(1-eps).
inline GroupCertificate certify_group(const SequenceFamily& family, const std::vector<std::size_t>& group, double t,
                                      double eps, const GridSpec& grid = default_grid()) {
  family.validate();
  if (!family.floor || !family.nets) throw std::invalid_argument("certify_group: floor and nets are required");
  GroupCertificate out;
  out.target = family.norm()(1.0 - eps, 1.0 - eps);
  const auto& nets = *family.nets;
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = a + 1; b < group.size(); ++b) {
      PairCertificate pc;
      pc.n = group[a];
      pc.m = group[b];
      try {
        const auto md = build_m_delta(family.spaces[pc.n], family.spaces[pc.m], nets[pc.n], nets[pc.m], t, eps,
                                      *family.floor, grid);
        pc.hausdorff = md.hausdorff;
        pc.delta = md.delta;
        pc.ok = md.validation.passes() && md.hausdorff > out.target;
        if (!md.validation.passes()) pc.error = "gluing failed the axiom check";
        else if (!pc.ok) pc.error = "H does not exceed (1-eps)*(1-eps)";
      } catch (const HypothesisError& e) {
        pc.error = e.what();
      }
      out.all_ok = out.all_ok && pc.ok;
      out.pairs.push_back(std::move(pc));
    }
  return out;
}

/// Level n (n = 1..depth) must be a subsequence of level n-1 (level 0 is
/// 0, 1, ..., base_length-1). Returns the n-th element of each level n.
using LevelSelector = std::function<std::vector<std::size_t>(double t, double eps, const std::vector<std::size_t>& prev)>;

inline std::vector<std::size_t> diagonal_subsequence(std::size_t base_length, const LevelSelector& selector,
                                                     std::size_t depth) {
  std::vector<std::size_t> level(base_length);
  for (std::size_t i = 0; i < base_length; ++i) level[i] = i;
  std::vector<std::size_t> diag;
  for (std::size_t n = 1; n <= depth; ++n) {
    const double inv = 1.0 / static_cast<double>(n);
    auto next = selector(inv, inv, level);
    // subsequence: order-preserving selection from the previous level
    std::size_t pos = 0;
    for (std::size_t v : next) {
      while (pos < level.size() && level[pos] != v) ++pos;
      if (pos == level.size()) {
        throw std::invalid_argument("diagonal_subsequence: level " + std::to_string(n) +
                                    " is not a subsequence of level " + std::to_string(n - 1));
      }
      ++pos;
    }
    if (next.size() < n) {
      throw std::invalid_argument("diagonal_subsequence: level " + std::to_string(n) + " has fewer than " +
                                  std::to_string(n) + " elements");
    }
    diag.push_back(next[n - 1]);
    level = std::move(next);
  }
  return diag;
}

namespace detail {

inline std::vector<std::size_t> padded(std::vector<std::size_t> net, std::size_t length) {
  while (net.size() < length) net.push_back(net.back());
  return net;
}

}  // namespace detail

struct StationaryReport {
  bool cond1_stationary = true;
  bool cond1_tn1 = true;
  bool cond2 = true;
  double floor = 0.0;  // best constant C = min diam over the family
  std::size_t cover_bound = 0;
  bool pass = false;
  std::vector<std::string> failures;
  std::optional<PigeonholeTable> table;
  std::optional<GroupCertificate> certificate;
};

/// Hypotheses for stationary families; on success runs the pigeonhole
/// pipeline (values are t-free, so t = 1 is used) and certifies the group.
inline StationaryReport check_stationary_hypotheses(const SequenceFamily& family, double eps,
                                                    std::size_t exact_limit = kDefaultExactLimit) {
  family.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("check_stationary_hypotheses: eps must lie in (0,1)");
  StationaryReport r;
  for (std::size_t n = 0; n < family.spaces.size(); ++n)
    if (!family.spaces[n].is_stationary()) {
      r.cond1_stationary = false;
      r.failures.push_back("(1) space " + std::to_string(n) + " is not stationary");
    }
  r.cond1_tn1 = has_tn1(family.norm());
  if (!r.cond1_tn1) r.failures.push_back("(1) t-norm lacks property (TN1)");
  constexpr double kAnyT = 1.0;
  r.floor = 1.0;
  for (const auto& s : family.spaces) r.floor = std::min(r.floor, t_diameter(s, kAnyT));
  r.cond2 = r.floor > 0.0;
  if (!r.cond2) r.failures.push_back("(2) some member has diameter 0, no positive constant floor exists");
  if (!r.failures.empty()) return r;

  std::vector<std::vector<std::size_t>> nets;
  for (const auto& s : family.spaces) {
    nets.push_back(find_net(s, kAnyT, eps, exact_limit).indices);
    r.cover_bound = std::max(r.cover_bound, nets.back().size());
  }
  for (auto& net : nets) net = detail::padded(std::move(net), r.cover_bound);
  SequenceFamily fam{family.spaces, ValueFn::stationary(r.floor), std::move(nets)};
  r.table = pigeonhole_subsequence(fam, kAnyT, eps);
  r.certificate = certify_group(fam, r.table->selected, kAnyT, eps);
  r.pass = r.certificate->all_ok;
  if (!r.pass) r.failures.push_back("certification of the selected group failed");
  return r;
}

struct CoverCheck {
  double t = 0.0;
  double eps = 0.0;
  double radius = 0.0;  // eps t / (1 - eps)
  std::size_t bound = 0;
  bool pass = true;
  std::vector<std::size_t> fuzzy;   // Cov(X_n, eps, t)
  std::vector<std::size_t> metric;  // metric cover number at the radius
};

struct BridgeReport {
  double K = 0.0;
  std::vector<std::size_t> diameter_violations;  // members with diam > K
  FloorReport floor;
  bool cover_pass = true;
  std::vector<CoverCheck> covers;
  bool ratio_pass = true;
  std::vector<RatioReport> ratios;
  [[nodiscard]] bool pass() const { return floor.pass && cover_pass && ratio_pass; }
};

/// Standard fuzzy family with product norm built from classical metrics;
/// verifies the floor s/(s+K), the cover-number translation and the ratio
/// condition at each (t, eps) of the test sets.
inline BridgeReport standard_bridge_check(const std::vector<DistanceMatrix>& metrics, double K,
                                          const std::function<std::size_t(double)>& cover_n = {},
                                          const std::vector<double>& t_values = {0.5, 1.0, 2.0},
                                          const std::vector<double>& eps_values = {0.1, 0.3, 0.5},
                                          const GridSpec& grid = default_grid(), SequenceFamily* family_out = nullptr) {
  if (metrics.empty()) throw std::invalid_argument("standard_bridge_check: no metrics given");
  if (!(K > 0.0)) throw std::domain_error("standard_bridge_check: K must be positive");
  BridgeReport r;
  r.K = K;
  SequenceFamily fam;
  for (std::size_t n = 0; n < metrics.size(); ++n) {
    if (metrics[n].diameter() > K) r.diameter_violations.push_back(n);
    fam.spaces.push_back(make_standard_space(default_labels(metrics[n].size()), metrics[n], TNorm::product(),
                                             "X" + std::to_string(n + 1)));
  }
  fam.floor = ValueFn::standard(K);
  r.floor = check_diameter_floor(fam, grid);

  for (double t : t_values)
    for (double eps : eps_values) {
      CoverCheck cc;
      cc.t = t;
      cc.eps = eps;
      cc.radius = eps * t / (1.0 - eps);
      std::size_t metric_max = 0;
      std::vector<std::vector<std::size_t>> nets;
      for (std::size_t n = 0; n < metrics.size(); ++n) {
        auto cov = cover_number(fam.spaces[n], eps, t);
        cc.fuzzy.push_back(cov.cover_number);
        cc.metric.push_back(metric_cover_number(metrics[n], cc.radius));
        metric_max = std::max(metric_max, cc.metric.back());
        nets.push_back(std::move(cov.certificate.indices));
      }
      cc.bound = cover_n ? cover_n(cc.radius) : metric_max;
      for (std::size_t n = 0; n < metrics.size(); ++n)
        cc.pass = cc.pass && cc.fuzzy[n] == cc.metric[n] && cc.fuzzy[n] <= cc.bound;
      r.cover_pass = r.cover_pass && cc.pass;

      std::size_t N = 0;
      for (const auto& net : nets) N = std::max(N, net.size());
      for (auto& net : nets) net = detail::padded(std::move(net), N);
      SequenceFamily with_nets{fam.spaces, fam.floor, std::move(nets)};
      auto rr = check_ratio_condition(with_nets, t, eps);
      r.ratio_pass = r.ratio_pass && rr.general_pass && rr.product_pass;
      r.ratios.push_back(std::move(rr));
      r.covers.push_back(std::move(cc));
    }
  if (family_out) *family_out = std::move(fam);
  return r;
}

/// Two-point spaces X_n with M_n = v_n for t <= n and 1 beyond, where
/// v_n = 1/2 for even n and 1/3 for odd n; product norm, floor 1/3.
inline SequenceFamily gen_no_cauchy_family(std::size_t count) {
  if (count < 2) throw std::invalid_argument("gen_no_cauchy_family: count must be at least 2");
  SequenceFamily fam;
  for (std::size_t n = 1; n <= count; ++n) {
    const double v = n % 2 == 0 ? 1.0 / 2.0 : 1.0 / 3.0;
    fam.spaces.push_back(make_step_space({"x1", "x2"}, {StepPair{0, 1, ValueFn::step({static_cast<double>(n)}, {v, 1.0})}},
                                         TNorm::product(), "X" + std::to_string(n)));
  }
  fam.floor = ValueFn::stationary(1.0 / 3.0);
  fam.nets = std::vector<std::vector<std::size_t>>(count, std::vector<std::size_t>{0, 1});
  return fam;
}

struct ParityPair {
  std::size_t n = 0;  // 1-based member numbers
  std::size_t m = 0;
  double upper = 1.0;
  double lower = 0.0;
  bool isometric_at_t = false;
};

struct NoCauchyReport {
  double t = 0.5;
  double eps = 0.1;
  double resolution = 0.005;
  double matched_lhs = 1.0 / 3.0;  // 1/3
  double matched_rhs = 0.0;        // 1/2 * (1-eps)^2
  bool matched_inequality_holds = true;
  bool unique_net = true;  // the full point set is the only (t, eps)-net of every member
  std::vector<ParityPair> cross_parity;
  std::vector<ParityPair> same_parity;
  bool all_below_threshold = true;  // every even/odd upper bound < 1 - eps
  [[nodiscard]] bool contradiction_confirmed() const {
    return !matched_inequality_holds && all_below_threshold && unique_net;
  }
};

/// Reproduces the non-Cauchy argument: the matched-net inequality fails and
/// the certified upper bound for each consecutive even/odd pair stays below
/// the Cauchy threshold 1 - eps.
inline NoCauchyReport verify_no_cauchy(const SequenceFamily& family, double t = 0.5, double eps = 0.1, double h = 0.005,
                                       bool same_parity_bounds = true) {
  family.validate();
  NoCauchyReport r;
  r.t = t;
  r.eps = eps;
  r.resolution = h;
  r.matched_rhs = 0.5 * (1.0 - eps) * (1.0 - eps);
  r.matched_inequality_holds = r.matched_lhs >= r.matched_rhs;
  for (const auto& s : family.spaces) r.unique_net = r.unique_net && find_net(s, t, eps).indices.size() == s.size();
  const std::size_t count = family.spaces.size();
  for (std::size_t n = 2; n + 1 <= count; n += 2) {
    ParityPair p{n, n + 1};
    const auto& a = family.spaces[n - 1];
    const auto& b = family.spaces[n];
    p.upper = mgh_pointwise_upper_bound(a, b, t, h).upper;
    p.lower = mgh_lower_bound(a, b, t).value;
    r.all_below_threshold = r.all_below_threshold && p.upper < 1.0 - eps;
    r.cross_parity.push_back(p);
  }
  if (same_parity_bounds) {
    for (std::size_t n = 1; n + 2 <= count; ++n) {
      ParityPair p{n, n + 2};
      const auto& a = family.spaces[n - 1];
      const auto& b = family.spaces[n + 1];
      p.isometric_at_t = isometric_at(a, b, t).has_value();
      p.upper = mgh_pointwise_upper_bound(a, b, t, h).upper;
      p.lower = mgh_lower_bound(a, b, t).value;
      r.same_parity.push_back(p);
    }
  }
  return r;
}

}  // namespace fuzzygh
