#pragma once

#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alipm {

enum class RadInner { enumeration, random_search, projected_ascent };

std::string to_string(RadInner inner);
RadInner parse_rad_inner(const std::string& s);

/// Monte-Carlo estimate of the empirical Rademacher complexity of the
/// constrained loss class on a fixed sample. The inner supremum over a
/// continuous class is approximated from below (random feasible probes,
/// projected subgradient ascent), so the estimate is a lower bound of the
/// sup-based value; std_error is the Monte-Carlo standard error over the
/// sign-vector draws (0 in exhaustive mode).
struct RadEstimate {
  double value = 0.0;
  std::size_t num_sigma = 0;
  RadInner inner = RadInner::projected_ascent;
  double std_error = 0.0;
};

struct RadOptions {
  std::size_t num_sigma = 256;
  bool exhaustive_sigma = false;  // enumerate all 2^m sign vectors (m <= 20)
  RadInner inner = RadInner::projected_ascent;
  std::size_t restarts = 4;        // ascent restarts per sign vector
  std::size_t ascent_iters = 60;
  double ascent_step = 0.5;
  std::size_t probes = 32;         // random feasible probes per sign vector
  double bias_box = 0.0;           // 0 -> M_X + M_Y; caps |bias| in the search
  std::uint64_t seed = 0;
  std::vector<Hypothesis> candidates;  // finite class, inner = enumeration
  TrainConfig arch;                    // shapes for random feasible draws
};

/// Rad estimate on a fully labeled pool. Per-sign-vector work derives its
/// seed from (seed, sigma index), so results do not depend on evaluation
/// order. inner = enumeration requires a non-empty candidate list, which is
/// projected once up front.
RadEstimate rademacher(SettingId setting, const Pool& data,
                       const RadOptions& opt);

/// Exact Rademacher complexity of a finite class by full sign enumeration.
/// values holds one hypothesis per row, one sample point per column; m <= 20.
/// Sign vectors are enumerated in complement pairs, so a singleton class
/// yields exactly 0 and the result is never negative.
double rademacher_exact_finite(const Matrix& values);

}  // namespace alipm
