#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace alipm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// SplitMix64 mixing step.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of substream `stream` from a root seed. Substreams are
/// counter-indexed so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Seedable generator with a fixed algorithm identity (mt19937_64) and fixed
/// output transforms: equal seeds reproduce equal draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0,1): top 53 bits of the raw output.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal, Box-Muller cosine branch; consumes exactly two uniforms.
  double normal();

  /// Uniform integer in [0,n), rejection sampled (no modulo bias).
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

struct LabeledSample {
  Vector x;
  double y = 0.0;
};

/// A finite set of points in R^n, each optionally labeled. Stored points must
/// satisfy ||x||_2 <= domain_bound and |y| <= label_bound; violating inserts
/// throw. Treat shared instances as frozen; label reveals go through the
/// value-returning with_labels().
class Pool {
 public:
  Pool(int dim, double domain_bound, double label_bound);

  int dim() const { return dim_; }
  double domain_bound() const { return mx_; }
  double label_bound() const { return my_; }
  std::size_t size() const { return points_.size(); }

  void add(const Vector& x);
  void add(const Vector& x, double y);

  const Vector& point(std::size_t i) const { return points_[i]; }
  std::optional<double> label(std::size_t i) const { return labels_[i]; }

  bool fully_labeled() const;
  std::size_t labeled_count() const;
  std::vector<std::size_t> labeled_indices() const;
  std::vector<std::size_t> unlabeled_indices() const;

  /// Copy of this pool with labels attached at the given indices.
  Pool with_labels(const std::vector<std::size_t>& indices,
                   const std::vector<double>& values) const;

  /// Pool restricted to the given indices (labels carried over).
  Pool subset(const std::vector<std::size_t>& indices) const;

  /// Pool of the labeled points only; the result is fully labeled.
  Pool labeled_subset() const;

  /// Points as rows of a size x dim matrix.
  Matrix points_matrix() const;
  Matrix points_matrix(const std::vector<std::size_t>& indices) const;

  /// All labels; throws unless fully labeled.
  Vector labels_vector() const;

 private:
  int dim_;
  double mx_;
  double my_;
  std::vector<Vector> points_;
  std::vector<std::optional<double>> labels_;
};

/// Synthetic distribution with a known marginal sampler and a closed-form
/// conditional labeling rule. The marginal is clipped to the ball of radius
/// domain_bound, so drawn pools always satisfy the Pool invariants. Immutable.
class SyntheticTask {
 public:
  using MarginalSampler = std::function<Vector(Rng&)>;
  using ConditionalRule = std::function<double(const Vector&, Rng&)>;

  SyntheticTask(std::string name, std::string description, int dim, double mx,
                double my, MarginalSampler marginal, ConditionalRule conditional,
                std::uint64_t seed = 0);

  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  int dim() const { return dim_; }
  double domain_bound() const { return mx_; }
  double label_bound() const { return my_; }
  std::uint64_t seed() const { return seed_; }

  /// One draw from the marginal, clipped to the ball of radius domain_bound.
  Vector sample_x(Rng& rng) const;

  /// Label of x under the conditional rule.
  double label_of(const Vector& x, Rng& rng) const;

 private:
  std::string name_;
  std::string description_;
  int dim_;
  double mx_;
  double my_;
  MarginalSampler marginal_;
  ConditionalRule conditional_;
  std::uint64_t seed_;
};

/// Builtin task registry. Throws on unknown names.
///   lin1d     - x ~ U[-1,1], y = 0.5x, M_X = 1, M_Y = 0.5
///   bimodal1d - x ~ two separated uniform bumps, y = sign(x), M_X = M_Y = 1
///   mix2d     - two Gaussian clusters in R^2, labels -1/+1 by cluster
///   mix2d01   - same marginal as mix2d with labels in {0,1}
SyntheticTask make_builtin_task(const std::string& name);
std::vector<std::string> builtin_task_names();

/// m labeled i.i.d. draws; pure function of (task, m, seed).
Pool sample_iid(const SyntheticTask& task, std::size_t m, std::uint64_t seed);

/// m unlabeled draws from the marginal; pure function of (task, m, seed).
Pool sample_unlabeled(const SyntheticTask& task, std::size_t m,
                      std::uint64_t seed);

}  // namespace alipm
