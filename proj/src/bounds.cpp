#include "alipm/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace alipm {

double empirical_risk(const Hypothesis& h, const Pool& data) {
  if (data.size() == 0) throw std::invalid_argument("empirical_risk: empty data");
  return weighted_loss(h, data, std::vector<double>(data.size(), 1.0));
}

std::pair<double, double> true_risk_mc(const Hypothesis& h,
                                       const SyntheticTask& task, std::size_t n,
                                       std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("true_risk_mc: n must be >= 2");
  Rng rng(derive_seed(seed, 0xB0));
  const LossKind loss = setting_row(h.setting()).loss;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector x = task.sample_x(rng);
    const double y = task.label_of(x, rng);
    const double v = loss_value(loss, y, h.predict(x));
    sum += v;
    sumsq += v * v;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sumsq - nd * mean * mean) / (nd - 1.0));
  return {mean, 1.96 * std::sqrt(var / nd)};
}

double deviation_term(double c, double delta, std::size_t m) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("deviation_term: delta must be in (0,1)");
  if (c <= 0.0) throw std::invalid_argument("deviation_term: c must be positive");
  if (m == 0) throw std::invalid_argument("deviation_term: m must be >= 1");
  return c * std::sqrt(2.0 * std::log(4.0 / delta) / static_cast<double>(m));
}

BoundReport assemble_bound(const Hypothesis& h, const Pool& queried,
                           const IpmEstimate& ipm, const RadEstimate& rad,
                           double delta, double c, double true_risk,
                           double true_risk_ci) {
  BoundReport report;
  report.m = queried.size();
  report.empirical_risk = empirical_risk(h, queried);
  report.ipm_term = ipm;
  report.rad_term = rad;
  report.delta = delta;
  report.c = c;
  report.deviation_term = deviation_term(c, delta, report.m);
  report.rhs_total = report.empirical_risk + report.ipm_term.value +
                     2.0 * report.rad_term.value + report.deviation_term;
  report.true_risk_mc = true_risk;
  report.true_risk_ci = true_risk_ci;
  report.holds = report.rhs_total >= report.true_risk_mc;
  return report;
}

IpmEstimate marginal_ipm(const Matrix& pool_x, const Matrix& queried_x,
                         Generator generator, int tv_bins) {
  if (generator == Generator::Kantorovich)
    return kantorovich_exact(pool_x, queried_x);
  return tv_histogram(pool_x, queried_x,
                      GridSpec::uniform(static_cast<int>(pool_x.cols()), tv_bins));
}

namespace {

Matrix draw_query_marginal(const SyntheticTask& task,
                           const QueryDistConfig& dist, std::size_t m,
                           Rng& rng) {
  Matrix x(m, task.dim());
  for (std::size_t i = 0; i < m; ++i) {
    Vector xi = task.sample_x(rng);
    if (dist.kind == QueryDistConfig::Kind::biased) {
      if (dist.axis < 0 || dist.axis >= task.dim())
        throw std::invalid_argument("query_dist: axis out of range");
      int tries = 0;
      while ((xi[dist.axis] < dist.lo || xi[dist.axis] > dist.hi) &&
             ++tries < 100000)
        xi = task.sample_x(rng);
      if (xi[dist.axis] < dist.lo || xi[dist.axis] > dist.hi)
        throw std::runtime_error("query_dist: rejection sampling stalled");
    }
    x.row(i) = xi;
  }
  return x;
}

}  // namespace

BoundReport bound_experiment(const ExperimentConfig& config, std::uint64_t rep) {
  config.validate();
  const SyntheticTask task = make_builtin_task(config.task);
  const std::uint64_t rep_seed = derive_seed(config.seed, 0xE0 + rep);

  const Pool pool = sample_unlabeled(task, config.pool_size,
                                     derive_seed(rep_seed, 0));

  // Queried sample: x ~ P_Q, labels from the shared conditional.
  Rng qrng(derive_seed(rep_seed, 1));
  const Matrix qx =
      draw_query_marginal(task, config.query_dist, config.query_size, qrng);
  Pool queried(task.dim(), task.domain_bound(), task.label_bound());
  for (Eigen::Index i = 0; i < qx.rows(); ++i) {
    const Vector xi = qx.row(i);
    queried.add(xi, task.label_of(xi, qrng));
  }

  TrainConfig tc = config.train;
  tc.seed = derive_seed(rep_seed, 2);
  const Hypothesis h = train(config.setting, queried, tc).hypothesis;

  const Generator gen = setting_row(config.setting).generator;
  const IpmEstimate ipm =
      marginal_ipm(pool.points_matrix(), qx, gen, config.tv_bins);

  RadOptions ro;
  ro.num_sigma = config.mc.num_sigma;
  ro.inner = config.mc.inner;
  ro.restarts = config.mc.restarts;
  ro.ascent_iters = config.mc.ascent_iters;
  ro.probes = config.mc.probes;
  ro.seed = derive_seed(rep_seed, 3);
  ro.arch = config.train;
  const RadEstimate rad = rademacher(config.setting, queried, ro);

  const auto [tr, tr_ci] =
      true_risk_mc(h, task, config.mc.true_risk_n, derive_seed(rep_seed, 4));

  return assemble_bound(h, queried, ipm, rad, config.delta, config.c_const, tr,
                        tr_ci);
}

CoverageResult coverage_experiment(const ExperimentConfig& config,
                                   std::size_t repetitions) {
  if (repetitions < 1)
    throw std::invalid_argument("coverage_experiment: repetitions must be >= 1");
  CoverageResult result;
  result.rows.reserve(repetitions);
  std::size_t held = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const BoundReport report = bound_experiment(config, rep);
    CoverageRow row;
    row.rep = rep;
    row.emp_risk = report.empirical_risk;
    row.ipm = report.ipm_term.value;
    row.rad = report.rad_term.value;
    row.rad_std_error = report.rad_term.std_error;
    row.dev = report.deviation_term;
    row.rhs = report.rhs_total;
    row.true_risk = report.true_risk_mc;
    row.holds = report.holds;
    result.rows.push_back(row);
    if (row.holds) ++held;
    result.mean_emp += row.emp_risk;
    result.mean_ipm += row.ipm;
    result.mean_rad += row.rad;
    result.mean_dev += row.dev;
    result.mean_rhs += row.rhs;
    result.mean_true += row.true_risk;
  }
  const double n = static_cast<double>(repetitions);
  result.coverage = static_cast<double>(held) / n;
  result.mean_emp /= n;
  result.mean_ipm /= n;
  result.mean_rad /= n;
  result.mean_dev /= n;
  result.mean_rhs /= n;
  result.mean_true /= n;
  return result;
}

}  // namespace alipm
