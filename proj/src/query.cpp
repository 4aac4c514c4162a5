#include "alipm/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alipm {

namespace {

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Rank = number of strictly smaller values; ties share the smaller rank.
std::vector<std::size_t> competition_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> ranks(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j)
      if (values[j] < values[i]) ++ranks[i];
  return ranks;
}

}  // namespace

double subset_marginal_ipm(const Pool& pool,
                           const std::vector<std::size_t>& subset,
                           Generator generator, int tv_bins) {
  if (subset.empty())
    throw std::invalid_argument("subset_marginal_ipm: empty subset");
  if (generator == Generator::TotalVariation) {
    const Matrix sx = pool.points_matrix(subset);
    return tv_histogram(sx, pool.points_matrix(),
                        GridSpec::uniform(pool.dim(), tv_bins))
        .value;
  }
  if (pool.dim() == 1) {
    std::vector<double> xa(subset.size()), wa(subset.size(), 1.0 / subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
      xa[i] = pool.point(subset[i])[0];
    std::vector<double> xb(pool.size()), wb(pool.size(), 1.0 / pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) xb[i] = pool.point(i)[0];
    return wasserstein1_1d_weighted(xa, wa, xb, wb);
  }
  return kantorovich_exact(pool.points_matrix(subset), pool.points_matrix())
      .value;
}

std::vector<std::size_t> select_random(const Pool& pool, std::size_t k,
                                       std::uint64_t seed) {
  std::vector<std::size_t> unlabeled = pool.unlabeled_indices();
  if (k > unlabeled.size())
    throw std::invalid_argument("select_random: k exceeds unlabeled count");
  Rng rng(derive_seed(seed, 0xF1));
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(unlabeled.size() - i);
    std::swap(unlabeled[i], unlabeled[j]);
  }
  unlabeled.resize(k);
  return sorted_copy(std::move(unlabeled));
}

std::vector<double> informativeness_scores(const Pool& pool,
                                           const Hypothesis& h) {
  const LossKind loss = setting_row(h.setting()).loss;
  std::vector<double> scores(pool.size(), 0.0);
  if (loss == LossKind::HINGE || loss == LossKind::LOG) {
    const double center = loss == LossKind::LOG ? 0.5 : 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      scores[i] = std::abs(h.predict(pool.point(i)) - center);
    return scores;
  }
  // Regression proxy: points far from every labeled point rank as most
  // informative. No labeled points -> all scores equal.
  const auto labeled = pool.labeled_indices();
  if (labeled.empty()) return scores;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j : labeled)
      dmin = std::min(dmin, (pool.point(i) - pool.point(j)).norm());
    scores[i] = -dmin;
  }
  return scores;
}

std::vector<std::size_t> select_uncertainty(const Pool& pool, std::size_t k,
                                            const Hypothesis& h) {
  const std::vector<std::size_t> unlabeled = pool.unlabeled_indices();
  if (k > unlabeled.size())
    throw std::invalid_argument("select_uncertainty: k exceeds unlabeled count");
  const std::vector<double> scores = informativeness_scores(pool, h);
  std::vector<std::size_t> order = unlabeled;  // ascending, so ties keep index order
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  order.resize(k);
  return sorted_copy(std::move(order));
}

namespace {

// Greedy engine shared by representative and hybrid selection. The
// informativeness ranks are static per batch; the IPM objective is
// re-evaluated each step. A negative lambda means pure IPM greedy.
std::vector<std::size_t> greedy_select(const Pool& pool, std::size_t k,
                                       const std::vector<double>* inf_scores,
                                       double lambda, Generator generator,
                                       int tv_bins) {
  std::vector<std::size_t> candidates = pool.unlabeled_indices();
  if (k > candidates.size())
    throw std::invalid_argument("greedy_select: k exceeds unlabeled count");
  std::vector<std::size_t> chosen = pool.labeled_indices();
  const std::size_t base = chosen.size();

  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t n_cand = candidates.size();
    std::vector<double> ipm_vals(n_cand);
    chosen.push_back(0);  // slot for the trial candidate
    for (std::size_t c = 0; c < n_cand; ++c) {
      chosen.back() = candidates[c];
      ipm_vals[c] = subset_marginal_ipm(pool, chosen, generator, tv_bins);
    }
    chosen.pop_back();

    std::size_t pick = 0;
    if (lambda < 0.0) {
      // Pure greedy: strict minimum, first candidate wins ties.
      for (std::size_t c = 1; c < n_cand; ++c)
        if (ipm_vals[c] < ipm_vals[pick]) pick = c;
    } else {
      const std::vector<std::size_t> ipm_ranks = competition_ranks(ipm_vals);
      std::vector<double> inf_vals(n_cand);
      for (std::size_t c = 0; c < n_cand; ++c)
        inf_vals[c] = (*inf_scores)[candidates[c]];
      const std::vector<std::size_t> inf_ranks = competition_ranks(inf_vals);
      const double denom = n_cand > 1 ? static_cast<double>(n_cand - 1) : 1.0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < n_cand; ++c) {
        const double blended =
            lambda * (1.0 - static_cast<double>(inf_ranks[c]) / denom) +
            (1.0 - lambda) * (1.0 - static_cast<double>(ipm_ranks[c]) / denom);
        if (blended > best) {
          best = blended;
          pick = c;
        }
      }
    }
    chosen.push_back(candidates[pick]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  std::vector<std::size_t> selected(chosen.begin() + static_cast<std::ptrdiff_t>(base),
                                    chosen.end());
  return sorted_copy(std::move(selected));
}

}  // namespace

std::vector<std::size_t> select_representative(const Pool& pool, std::size_t k,
                                               Generator generator, int tv_bins) {
  return greedy_select(pool, k, nullptr, -1.0, generator, tv_bins);
}

std::vector<std::size_t> select_hybrid(const Pool& pool, std::size_t k,
                                       const Hypothesis& h, double lambda,
                                       Generator generator, int tv_bins) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("select_hybrid: lambda must be in [0,1]");
  const std::vector<double> scores = informativeness_scores(pool, h);
  return greedy_select(pool, k, &scores, lambda, generator, tv_bins);
}

std::vector<CurveRecord> al_loop(const ExperimentConfig& config) {
  config.validate();
  const SyntheticTask task = make_builtin_task(config.task);
  Pool pool = sample_unlabeled(task, config.pool_size, derive_seed(config.seed, 10));
  if (!config.budget.empty() && config.budget.back() > pool.size())
    throw std::invalid_argument("al_loop: budget exceeds pool size");

  TrainConfig tc = config.train;
  tc.seed = derive_seed(config.seed, 11);
  Hypothesis h = zero_hypothesis(config.setting, pool, tc);

  const Generator row_gen = setting_row(config.setting).generator;
  std::vector<CurveRecord> records;

  int round = 0;
  for (std::size_t target : config.budget) {
    const std::size_t have = pool.labeled_count();
    if (target <= have) continue;
    const std::size_t k = target - have;
    const std::uint64_t rseed = derive_seed(config.seed, 100 + round);

    std::vector<std::size_t> picks;
    switch (config.strategy.kind) {
      case StrategyKind::random:
        picks = select_random(pool, k, rseed);
        break;
      case StrategyKind::uncertainty:
        picks = select_uncertainty(pool, k, h);
        break;
      case StrategyKind::representative:
        picks = select_representative(pool, k, config.strategy.generator,
                                      config.tv_bins);
        break;
      case StrategyKind::hybrid:
        picks = select_hybrid(pool, k, h, config.strategy.lambda,
                              config.strategy.generator, config.tv_bins);
        break;
    }

    Rng label_rng(derive_seed(config.seed, 200 + round));
    std::vector<double> values;
    values.reserve(picks.size());
    for (std::size_t i : picks)
      values.push_back(task.label_of(pool.point(i), label_rng));
    pool = pool.with_labels(picks, values);

    const Pool labeled = pool.labeled_subset();
    tc.seed = derive_seed(config.seed, 300 + round);
    h = train(config.setting, labeled, tc).hypothesis;

    CurveRecord rec;
    rec.round = round;
    rec.labeled_count = labeled.size();
    rec.strategy = to_string(config.strategy.kind);
    rec.empirical_risk = empirical_risk(h, labeled);
    rec.true_risk = true_risk_mc(h, task, config.mc.true_risk_n,
                                 derive_seed(config.seed, 400 + round))
                        .first;
    const auto labeled_idx = pool.labeled_indices();
    rec.ipm = subset_marginal_ipm(pool, labeled_idx, config.strategy.generator,
                                  config.tv_bins);

    RadOptions ro;
    ro.num_sigma = config.mc.num_sigma;
    ro.inner = config.mc.inner;
    ro.restarts = config.mc.restarts;
    ro.ascent_iters = config.mc.ascent_iters;
    ro.probes = config.mc.probes;
    ro.seed = derive_seed(config.seed, 500 + round);
    ro.arch = config.train;
    const RadEstimate rad = rademacher(config.setting, labeled, ro);
    const double ipm_row =
        row_gen == config.strategy.generator
            ? rec.ipm
            : subset_marginal_ipm(pool, labeled_idx, row_gen, config.tv_bins);
    rec.rhs_total = rec.empirical_risk + ipm_row + 2.0 * rad.value +
                    deviation_term(config.c_const, config.delta, labeled.size());

    records.push_back(rec);
    ++round;
  }
  return records;
}

}  // namespace alipm
