#include "alipm/config.hpp"

#include <stdexcept>

namespace alipm {

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::random: return "random";
    case StrategyKind::uncertainty: return "uncertainty";
    case StrategyKind::representative: return "representative";
    case StrategyKind::hybrid: return "hybrid";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& s) {
  if (s == "random") return StrategyKind::random;
  if (s == "uncertainty") return StrategyKind::uncertainty;
  if (s == "representative") return StrategyKind::representative;
  if (s == "hybrid") return StrategyKind::hybrid;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("config: delta must be in (0,1)");
  if (c_const <= 0.0)
    throw std::invalid_argument("config: c must be positive");
  if (pool_size < 1 || query_size < 1)
    throw std::invalid_argument("config: sample counts must be >= 1");
  if (mc.num_sigma < 1 || mc.true_risk_n < 2)
    throw std::invalid_argument("config: mc sample counts too small");
  if (train.iters < 1)
    throw std::invalid_argument("config: train.iters must be >= 1");
  if (strategy.lambda < 0.0 || strategy.lambda > 1.0)
    throw std::invalid_argument("config: lambda must be in [0,1]");
  if (tv_bins < 1) throw std::invalid_argument("config: tv_bins must be >= 1");
  for (std::size_t i = 1; i < budget.size(); ++i)
    if (budget[i] < budget[i - 1])
      throw std::invalid_argument("config: budget must be nondecreasing");
  if (!budget.empty() && budget.front() < 1)
    throw std::invalid_argument("config: budget entries must be >= 1");
}

}  // namespace alipm
