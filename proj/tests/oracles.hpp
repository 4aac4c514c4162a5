#pragma once

// Test-only oracles, kept independent of the library's estimators.

#include "alipm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

// Optimal transport between equal-size, equal-weight point sets by
// enumerating all assignment permutations. Sizes <= 8.
inline double assignment_transport(const alipm::Matrix& a, const alipm::Matrix& b) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (n != static_cast<std::size_t>(b.rows()) || n == 0 || n > 8)
    throw std::invalid_argument("assignment_transport: need equal sizes in [1,8]");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      cost += (a.row(static_cast<Eigen::Index>(i)) -
               b.row(static_cast<Eigen::Index>(perm[i])))
                  .norm();
    best = std::min(best, cost / static_cast<double>(n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// sup over f in {-1,+1}^k of |sum_i f_i (p_i - q_i)|, by full enumeration.
inline double tv_bruteforce(const alipm::Vector& p, const alipm::Vector& q) {
  const auto k = static_cast<std::size_t>(p.size());
  if (k == 0 || k > 20 || q.size() != p.size())
    throw std::invalid_argument("tv_bruteforce: need equal lengths in [1,20]");
  double best = 0.0;
  for (std::uint64_t code = 0; code < (1ULL << k); ++code) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double f = (code >> i) & 1 ? 1.0 : -1.0;
      s += f * (p[static_cast<Eigen::Index>(i)] - q[static_cast<Eigen::Index>(i)]);
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

// Central finite difference of a scalar function of a vector.
template <typename Fn>
alipm::Vector numeric_gradient(Fn&& fn, const alipm::Vector& x, double h = 1e-6) {
  alipm::Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    alipm::Vector hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (fn(hi) - fn(lo)) / (2.0 * h);
  }
  return g;
}

}  // namespace oracles
