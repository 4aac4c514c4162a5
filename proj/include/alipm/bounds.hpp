#pragma once

#include "alipm/complexity.hpp"
#include "alipm/config.hpp"
#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"
#include "alipm/ipm.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace alipm {

/// The assembled generalization bound: rhs_total is the exact sum
/// empirical_risk + ipm_term + 2 rad_term + deviation_term, together with a
/// Monte-Carlo true-risk estimate for coverage checking. The rad term is a
/// lower-bound estimate of the inner supremum (see RadEstimate), which can
/// only make `holds` harder to satisfy.
struct BoundReport {
  double empirical_risk = 0.0;
  IpmEstimate ipm_term;
  RadEstimate rad_term;
  double deviation_term = 0.0;
  double rhs_total = 0.0;
  double true_risk_mc = 0.0;
  double true_risk_ci = 0.0;  // 1.96 sd / sqrt(n)
  std::size_t m = 0;
  double delta = 0.0;
  double c = 1.0;
  bool holds = false;  // rhs_total >= true_risk_mc point estimate
};

/// Mean loss over a fully labeled pool.
double empirical_risk(const Hypothesis& h, const Pool& data);

/// Monte-Carlo true risk over n fresh draws from the task distribution;
/// returns (mean, 1.96 sd / sqrt(n)). n >= 2.
std::pair<double, double> true_risk_mc(const Hypothesis& h,
                                       const SyntheticTask& task, std::size_t n,
                                       std::uint64_t seed);

/// c sqrt(2 log(4/delta) / m), natural log.
double deviation_term(double c, double delta, std::size_t m);

/// Composes the bound from parts; all parts must refer to the same queried
/// sample of size queried.size().
BoundReport assemble_bound(const Hypothesis& h, const Pool& queried,
                           const IpmEstimate& ipm, const RadEstimate& rad,
                           double delta, double c, double true_risk,
                           double true_risk_ci);

/// IPM between the pool's empirical marginal and a queried empirical
/// marginal, using the generator's estimator (exact transport for
/// Kantorovich, shared-box histogram with tv_bins per axis for TV).
IpmEstimate marginal_ipm(const Matrix& pool_x, const Matrix& queried_x,
                         Generator generator, int tv_bins);

/// One full bound experiment: draw pool and queried sample (per the config's
/// query distribution), train the constrained hypothesis on the queried
/// sample, and assemble the bound. Pure in (config, rep).
BoundReport bound_experiment(const ExperimentConfig& config, std::uint64_t rep = 0);

struct CoverageRow {
  std::size_t rep = 0;
  double emp_risk = 0.0;
  double ipm = 0.0;
  double rad = 0.0;
  double rad_std_error = 0.0;
  double dev = 0.0;
  double rhs = 0.0;
  double true_risk = 0.0;
  bool holds = false;
};

struct CoverageResult {
  double coverage = 0.0;  // fraction of repetitions with holds = true
  double mean_emp = 0.0;
  double mean_ipm = 0.0;
  double mean_rad = 0.0;
  double mean_dev = 0.0;
  double mean_rhs = 0.0;
  double mean_true = 0.0;
  std::vector<CoverageRow> rows;
};

/// repetitions independent bound experiments with counter-derived seeds.
CoverageResult coverage_experiment(const ExperimentConfig& config,
                                   std::size_t repetitions);

}  // namespace alipm
