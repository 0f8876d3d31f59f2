#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fuzzygh/space.hpp"

namespace fuzzygh {

inline constexpr std::size_t kDefaultExactLimit = 15;

/// y lies in the ball B(x, eps, t) iff M(x, y, t) > 1 - eps (strict).
inline bool in_ball(const FuzzySpace& space, std::size_t center, std::size_t y, double eps, double t) {
  return space(center, y, t) > 1.0 - eps;
}

struct NetCertificate {
  double t = 0.0;
  double eps = 0.0;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> witness;  // witness[x] = net point covering x
  bool minimal = false;              // proven by exhaustive search
};

/// Whether `net` is a (t, eps)-net: every point lies in some ball around a net point.
inline bool is_net(const FuzzySpace& space, const std::vector<std::size_t>& net, double t, double eps) {
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool covered = false;
    for (std::size_t c : net) {
      if (c >= space.size()) return false;
      if (in_ball(space, c, x, eps, t)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

/// Re-verifies a certificate from scratch, including its witnesses.
inline bool verify_certificate(const FuzzySpace& space, const NetCertificate& cert) {
  if (cert.witness.size() != space.size()) return false;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::size_t c = cert.witness[x];
    if (std::find(cert.indices.begin(), cert.indices.end(), c) == cert.indices.end()) return false;
    if (!in_ball(space, c, x, cert.eps, cert.t)) return false;
  }
  return true;
}

namespace detail {

inline void validate_net_args(double t, double eps) {
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
}

inline NetCertificate certify(const FuzzySpace& space, std::vector<std::size_t> net, double t, double eps, bool minimal) {
  NetCertificate c{t, eps, std::move(net), {}, minimal};
  c.witness.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t p : c.indices)
      if (in_ball(space, p, x, eps, t)) {
        c.witness[x] = p;
        break;
      }
  return c;
}

/// Advances `comb` to the next k-combination of [0, n) in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// A (t, eps)-net of minimum size (lexicographically least) when the space
/// has at most exact_limit points; a greedy cover otherwise.
inline NetCertificate find_net(const FuzzySpace& space, double t, double eps,
                               std::size_t exact_limit = kDefaultExactLimit) {
  detail::validate_net_args(t, eps);
  const std::size_t n = space.size();
  if (n <= exact_limit && n <= 63) {
    std::vector<std::uint64_t> reach(n, 0);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t x = 0; x < n; ++x)
        if (in_ball(space, c, x, eps, t)) reach[c] |= std::uint64_t{1} << x;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::size_t> comb(k);
      for (std::size_t i = 0; i < k; ++i) comb[i] = i;
      do {
        std::uint64_t covered = 0;
        for (std::size_t c : comb) covered |= reach[c];
        if (covered == full) return detail::certify(space, comb, t, eps, true);
      } while (detail::next_combination(comb, n));
    }
  }
  // Greedy set cover; ties go to the lowest index.
  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  std::vector<std::size_t> net;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (!covered[x] && in_ball(space, c, x, eps, t)) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    net.push_back(best);
    for (std::size_t x = 0; x < n; ++x)
      if (!covered[x] && in_ball(space, best, x, eps, t)) {
        covered[x] = true;
        --remaining;
      }
  }
  std::sort(net.begin(), net.end());
  return detail::certify(space, std::move(net), t, eps, n <= 1);
}

struct CoverResult {
  std::size_t cover_number = 0;
  NetCertificate certificate;
};

/// Cov(X, eps, t): size of a minimum (t, eps)-net (greedy above exact_limit).
inline CoverResult cover_number(const FuzzySpace& space, double eps, double t,
                                std::size_t exact_limit = kDefaultExactLimit) {
  auto cert = find_net(space, t, eps, exact_limit);
  const std::size_t size = cert.indices.size();
  return CoverResult{size, std::move(cert)};
}

/// Smallest uniform bound N(eps, t) on the cover numbers of a finite family.
inline std::size_t uniform_cover_bound(const std::vector<FuzzySpace>& family, double eps, double t,
                                       std::size_t exact_limit = kDefaultExactLimit) {
  if (family.empty()) throw std::invalid_argument("uniform_cover_bound: family must be nonempty");
  std::size_t n = 0;
  for (const auto& s : family) n = std::max(n, cover_number(s, eps, t, exact_limit).cover_number);
  return n;
}

}  // namespace fuzzygh
