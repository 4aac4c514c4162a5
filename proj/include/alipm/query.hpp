#pragma once

#include "alipm/bounds.hpp"
#include "alipm/config.hpp"
#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"
#include "alipm/ipm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alipm {

/// All strategies return the chosen unlabeled indices in ascending order and
/// are pure functions of their arguments.

/// Uniform without replacement among the unlabeled indices.
std::vector<std::size_t> select_random(const Pool& pool, std::size_t k,
                                       std::uint64_t seed);

/// The k unlabeled points with the smallest informativeness score; ties go to
/// the lower index. Scores: hinge settings |score(x)|, logistic |h(x) - 1/2|,
/// regression settings -min distance to a labeled point (all equal when
/// nothing is labeled yet).
std::vector<std::size_t> select_uncertainty(const Pool& pool, std::size_t k,
                                            const Hypothesis& h);

/// Greedy forward selection: each step adds the unlabeled point whose
/// inclusion minimizes the IPM between the empirical measure on
/// (labeled + selected) and the full pool's empirical measure; ties go to the
/// lower index.
std::vector<std::size_t> select_representative(const Pool& pool, std::size_t k,
                                               Generator generator,
                                               int tv_bins = 16);

/// Greedy selection maximizing
///   lambda * (informativeness rank score) + (1-lambda) * (IPM rank score)
/// per step, each rank score normalized to [0,1] over the step's candidates.
/// Informativeness ranks are computed once per batch; lambda = 0 reproduces
/// select_representative and lambda = 1 reproduces select_uncertainty.
std::vector<std::size_t> select_hybrid(const Pool& pool, std::size_t k,
                                       const Hypothesis& h, double lambda,
                                       Generator generator, int tv_bins = 16);

/// The greedy objective: IPM between the empirical measure on pool[subset]
/// and the full pool's empirical measure. Kantorovich uses the exact 1-D
/// quantile form when dim == 1 and exact transport otherwise; TV uses the
/// shared-box histogram.
double subset_marginal_ipm(const Pool& pool,
                           const std::vector<std::size_t>& subset,
                           Generator generator, int tv_bins = 16);

/// Per-pool-index informativeness scores used by select_uncertainty (small =
/// informative).
std::vector<double> informativeness_scores(const Pool& pool, const Hypothesis& h);

struct CurveRecord {
  int round = 0;
  std::size_t labeled_count = 0;
  std::string strategy;
  double empirical_risk = 0.0;
  double true_risk = 0.0;
  double ipm = 0.0;  // ipm(pool, labeled) under the strategy's generator
  double rhs_total = 0.0;
};

/// Pool-based active-learning loop over the config's budget schedule: select
/// per strategy, reveal labels through the task conditional, retrain, record.
/// Rounds where no hypothesis exists yet score uncertainty against the
/// all-zero hypothesis.
std::vector<CurveRecord> al_loop(const ExperimentConfig& config);

}  // namespace alipm
