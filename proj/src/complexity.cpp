#include "alipm/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alipm {

std::string to_string(RadInner inner) {
  switch (inner) {
    case RadInner::enumeration: return "enumeration";
    case RadInner::random_search: return "random_search";
    case RadInner::projected_ascent: return "projected_ascent";
  }
  return "?";
}

RadInner parse_rad_inner(const std::string& s) {
  if (s == "enumeration") return RadInner::enumeration;
  if (s == "random_search") return RadInner::random_search;
  if (s == "projected_ascent") return RadInner::projected_ascent;
  throw std::invalid_argument("unknown rademacher inner method '" + s + "'");
}

namespace {

// (1/m) sum_i sigma_i row_i, maximized over rows. Summation runs in index
// order so that negating sigma negates the result exactly.
double best_row_correlation(const Matrix& values, const std::vector<double>& sigma) {
  const auto m = static_cast<std::size_t>(values.cols());
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < values.rows(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      sum += sigma[i] * values(k, static_cast<Eigen::Index>(i));
    best = std::max(best, sum / static_cast<double>(m));
  }
  return best;
}

// Full enumeration over sign vectors, visited in complement pairs: the pair
// contributions max_k(v) + max_k(-v) are each >= 0, so the total is exact 0
// for a singleton class and never negative.
double rad_enumerate(const Matrix& values) {
  const auto m = static_cast<std::size_t>(values.cols());
  if (m == 0 || values.rows() == 0)
    throw std::invalid_argument("rad_enumerate: empty values");
  if (m > 20) throw std::invalid_argument("rad_enumerate: m must be <= 20");
  const std::uint64_t half = 1ULL << (m - 1);
  std::vector<double> sigma(m), neg(m);
  double acc = 0.0;
  for (std::uint64_t code = 0; code < half; ++code) {
    for (std::size_t i = 0; i < m; ++i) {
      sigma[i] = (code >> i) & 1 ? 1.0 : -1.0;
      neg[i] = -sigma[i];
    }
    acc += best_row_correlation(values, sigma) +
           best_row_correlation(values, neg);
  }
  return acc / static_cast<double>(1ULL << m);
}

double effective_bias_box(SettingId setting, const DomainBounds& bd, double box) {
  if (setting == SettingId::LIN_L2)
    return std::min(box, 0.45 * std::max(0.0, 1.0 - bd.my));
  return box;
}

Hypothesis random_feasible(SettingId setting, Rng& rng, const Pool& data,
                           const TrainConfig& arch, double box) {
  Hypothesis h = random_hypothesis(setting, rng, data, arch, 1.0);
  h = clamp_biases(h, box);
  return project(h);
}

double inner_search(SettingId setting, const Pool& data,
                    const std::vector<double>& sigma, const RadOptions& opt,
                    double box, std::uint64_t inner_seed) {
  double best = -std::numeric_limits<double>::infinity();
  Rng probe_rng(derive_seed(inner_seed, 0));
  for (std::size_t p = 0; p < opt.probes; ++p) {
    const Hypothesis h =
        random_feasible(setting, probe_rng, data, opt.arch, box);
    best = std::max(best, weighted_loss(h, data, sigma));
  }
  if (opt.inner == RadInner::random_search) return best;

  for (std::size_t r = 0; r < opt.restarts; ++r) {
    Rng rng(derive_seed(inner_seed, 1 + r));
    Hypothesis h = random_feasible(setting, rng, data, opt.arch, box);
    best = std::max(best, weighted_loss(h, data, sigma));
    for (std::size_t t = 1; t <= opt.ascent_iters; ++t) {
      const ParamVector g = weighted_loss_gradient(h, data, sigma);
      const double step = opt.ascent_step / std::sqrt(static_cast<double>(t));
      h = apply_step(h, g, step);
      h = clamp_biases(h, box);
      h = project(h);
      best = std::max(best, weighted_loss(h, data, sigma));
    }
  }
  return best;
}

}  // namespace

double rademacher_exact_finite(const Matrix& values) {
  return rad_enumerate(values);
}

RadEstimate rademacher(SettingId setting, const Pool& data,
                       const RadOptions& opt) {
  const std::size_t m = data.size();
  if (m == 0) throw std::invalid_argument("rademacher: empty data");
  if (!data.fully_labeled())
    throw std::invalid_argument("rademacher: data must be fully labeled");
  if (!opt.exhaustive_sigma && opt.num_sigma < 1)
    throw std::invalid_argument("rademacher: num_sigma must be >= 1");

  const DomainBounds bd{data.domain_bound(), data.label_bound()};
  const double box =
      effective_bias_box(setting, bd, opt.bias_box > 0.0 ? opt.bias_box : bd.mx + bd.my);

  Matrix candidate_values;
  if (opt.inner == RadInner::enumeration) {
    if (opt.candidates.empty())
      throw std::invalid_argument("rademacher: enumeration needs candidates");
    candidate_values.resize(opt.candidates.size(), m);
    for (std::size_t k = 0; k < opt.candidates.size(); ++k) {
      if (opt.candidates[k].setting() != setting)
        throw std::invalid_argument("rademacher: candidate setting mismatch");
      const Hypothesis h = project(opt.candidates[k]);
      for (std::size_t i = 0; i < m; ++i)
        candidate_values(static_cast<Eigen::Index>(k),
                         static_cast<Eigen::Index>(i)) =
            loss_value(h, data.point(i), *data.label(i));
    }
  }

  RadEstimate est;
  est.inner = opt.inner;

  if (opt.exhaustive_sigma) {
    if (m > 20)
      throw std::invalid_argument("rademacher: exhaustive needs m <= 20");
    est.num_sigma = static_cast<std::size_t>(1ULL << m);
    est.std_error = 0.0;
    if (opt.inner == RadInner::enumeration) {
      est.value = rad_enumerate(candidate_values);
      return est;
    }
    std::vector<double> sigma(m);
    double acc = 0.0;
    for (std::uint64_t code = 0; code < (1ULL << m); ++code) {
      for (std::size_t i = 0; i < m; ++i)
        sigma[i] = (code >> i) & 1 ? 1.0 : -1.0;
      acc += inner_search(setting, data, sigma, opt, box,
                          derive_seed(opt.seed, 2 * code + 1));
    }
    est.value = acc / static_cast<double>(1ULL << m);
    return est;
  }

  std::vector<double> draws(opt.num_sigma);
  std::vector<double> sigma(m);
  for (std::size_t s = 0; s < opt.num_sigma; ++s) {
    Rng sig_rng(derive_seed(opt.seed, 2 * s));
    for (std::size_t i = 0; i < m; ++i)
      sigma[i] = (sig_rng.next_u64() & 1) ? 1.0 : -1.0;
    if (opt.inner == RadInner::enumeration)
      draws[s] = best_row_correlation(candidate_values, sigma);
    else
      draws[s] = inner_search(setting, data, sigma, opt, box,
                              derive_seed(opt.seed, 2 * s + 1));
  }

  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= static_cast<double>(draws.size());
  double var = 0.0;
  for (double v : draws) var += (v - mean) * (v - mean);
  var = draws.size() > 1 ? var / static_cast<double>(draws.size() - 1) : 0.0;

  est.value = mean;
  est.num_sigma = opt.num_sigma;
  est.std_error = std::sqrt(var / static_cast<double>(draws.size()));
  return est;
}

}  // namespace alipm
