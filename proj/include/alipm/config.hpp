#pragma once

#include "alipm/complexity.hpp"
#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"
#include "alipm/ipm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alipm {

enum class StrategyKind { random, uncertainty, representative, hybrid };

std::string to_string(StrategyKind k);
StrategyKind parse_strategy(const std::string& s);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::random;
  double lambda = 0.5;  // hybrid mixing weight in [0,1]
  Generator generator = Generator::Kantorovich;
};

/// Query marginal P_Q for bound/coverage runs: the task marginal itself, or
/// the marginal restricted to [lo, hi] on one axis (rejection sampled).
struct QueryDistConfig {
  enum class Kind { marginal, biased };
  Kind kind = Kind::marginal;
  int axis = 0;
  double lo = 0.0;
  double hi = 1.0;
};

struct McConfig {
  std::size_t num_sigma = 256;
  RadInner inner = RadInner::projected_ascent;
  std::size_t restarts = 4;
  std::size_t ascent_iters = 60;
  std::size_t probes = 32;
  std::size_t true_risk_n = 100000;
};

struct Tolerances {
  double cert_slack = kCertSlack;
};

struct ExperimentConfig {
  std::string task = "lin1d";
  SettingId setting = SettingId::LIN_L1;
  double delta = 0.1;
  double c_const = 1.0;
  std::uint64_t seed = 0;
  std::size_t pool_size = 256;
  std::size_t query_size = 50;
  std::vector<std::size_t> budget;  // AL schedule of cumulative label counts
  StrategyConfig strategy;
  QueryDistConfig query_dist;
  McConfig mc;
  TrainConfig train;
  Tolerances tolerances;
  int tv_bins = 16;  // histogram resolution for TV-generator IPM terms

  /// Throws on out-of-range fields (delta outside (0,1), zero counts, ...).
  void validate() const;
};

}  // namespace alipm
