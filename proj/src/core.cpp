#include "alipm/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alipm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root + stream * 0x9E3779B97F4A7C15ULL);
}

double Rng::normal() {
  // u1 in (0,1] so the log stays finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

Pool::Pool(int dim, double domain_bound, double label_bound)
    : dim_(dim), mx_(domain_bound), my_(label_bound) {
  if (dim <= 0) throw std::invalid_argument("Pool: dim must be positive");
  if (domain_bound < 0 || label_bound < 0)
    throw std::invalid_argument("Pool: bounds must be nonnegative");
}

void Pool::add(const Vector& x) {
  if (x.size() != dim_)
    throw std::invalid_argument("Pool::add: point dimension mismatch");
  if (x.norm() > mx_ * (1.0 + 1e-12))
    throw std::invalid_argument("Pool::add: ||x|| exceeds domain_bound");
  points_.push_back(x);
  labels_.push_back(std::nullopt);
}

void Pool::add(const Vector& x, double y) {
  if (std::abs(y) > my_ * (1.0 + 1e-12))
    throw std::invalid_argument("Pool::add: |y| exceeds label_bound");
  add(x);
  labels_.back() = y;
}

bool Pool::fully_labeled() const {
  for (const auto& l : labels_)
    if (!l) return false;
  return true;
}

std::size_t Pool::labeled_count() const {
  std::size_t n = 0;
  for (const auto& l : labels_)
    if (l) ++n;
  return n;
}

std::vector<std::size_t> Pool::labeled_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> Pool::unlabeled_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!labels_[i]) out.push_back(i);
  return out;
}

Pool Pool::with_labels(const std::vector<std::size_t>& indices,
                       const std::vector<double>& values) const {
  if (indices.size() != values.size())
    throw std::invalid_argument("Pool::with_labels: size mismatch");
  Pool out = *this;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= out.points_.size())
      throw std::invalid_argument("Pool::with_labels: index out of range");
    if (std::abs(values[k]) > my_ * (1.0 + 1e-12))
      throw std::invalid_argument("Pool::with_labels: |y| exceeds label_bound");
    out.labels_[indices[k]] = values[k];
  }
  return out;
}

Pool Pool::subset(const std::vector<std::size_t>& indices) const {
  Pool out(dim_, mx_, my_);
  for (std::size_t i : indices) {
    if (i >= points_.size())
      throw std::invalid_argument("Pool::subset: index out of range");
    out.points_.push_back(points_[i]);
    out.labels_.push_back(labels_[i]);
  }
  return out;
}

Pool Pool::labeled_subset() const { return subset(labeled_indices()); }

Matrix Pool::points_matrix() const {
  Matrix m(points_.size(), dim_);
  for (std::size_t i = 0; i < points_.size(); ++i) m.row(i) = points_[i];
  return m;
}

Matrix Pool::points_matrix(const std::vector<std::size_t>& indices) const {
  Matrix m(indices.size(), dim_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= points_.size())
      throw std::invalid_argument("Pool::points_matrix: index out of range");
    m.row(k) = points_[indices[k]];
  }
  return m;
}

Vector Pool::labels_vector() const {
  if (!fully_labeled())
    throw std::invalid_argument("Pool::labels_vector: pool has unlabeled points");
  Vector y(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) y[i] = *labels_[i];
  return y;
}

SyntheticTask::SyntheticTask(std::string name, std::string description, int dim,
                             double mx, double my, MarginalSampler marginal,
                             ConditionalRule conditional, std::uint64_t seed)
    : name_(std::move(name)),
      description_(std::move(description)),
      dim_(dim),
      mx_(mx),
      my_(my),
      marginal_(std::move(marginal)),
      conditional_(std::move(conditional)),
      seed_(seed) {
  if (dim_ <= 0) throw std::invalid_argument("SyntheticTask: dim must be positive");
}

Vector SyntheticTask::sample_x(Rng& rng) const {
  Vector x = marginal_(rng);
  const double n = x.norm();
  if (n > mx_ && n > 0.0) x *= mx_ / n;
  return x;
}

double SyntheticTask::label_of(const Vector& x, Rng& rng) const {
  return conditional_(x, rng);
}

namespace {

SyntheticTask make_lin1d() {
  return SyntheticTask(
      "lin1d", "x ~ U[-1,1], y = 0.5x", 1, 1.0, 0.5,
      [](Rng& rng) {
        Vector x(1);
        x[0] = rng.uniform(-1.0, 1.0);
        return x;
      },
      [](const Vector& x, Rng&) { return 0.5 * x[0]; });
}

SyntheticTask make_bimodal1d() {
  // Two separated bumps: U[-1,-0.6] and U[0.6,1], equal mass.
  return SyntheticTask(
      "bimodal1d", "x ~ bimodal on [-1,-0.6] u [0.6,1], y = sign(x)", 1, 1.0,
      1.0,
      [](Rng& rng) {
        Vector x(1);
        const double u = rng.uniform(0.6, 1.0);
        x[0] = (rng.next_u64() & 1) ? u : -u;
        return x;
      },
      [](const Vector& x, Rng&) { return x[0] >= 0.0 ? 1.0 : -1.0; });
}

Vector mixture_point(Rng& rng, double cx) {
  Vector x(2);
  x[0] = cx + 0.35 * rng.normal();
  x[1] = 0.35 * rng.normal();
  return x;
}

SyntheticTask make_mix2d(bool zero_one) {
  // Clusters at (-1,0) and (+1,0); the label is the cluster the point is
  // closest to, so the rule is deterministic in x even after clipping.
  auto marginal = [](Rng& rng) {
    const double cx = (rng.next_u64() & 1) ? 1.0 : -1.0;
    return mixture_point(rng, cx);
  };
  if (zero_one) {
    return SyntheticTask(
        "mix2d01", "two Gaussian clusters in R^2, labels {0,1} by cluster", 2,
        2.0, 1.0, marginal,
        [](const Vector& x, Rng&) { return x[0] >= 0.0 ? 1.0 : 0.0; });
  }
  return SyntheticTask(
      "mix2d", "two Gaussian clusters in R^2, labels {-1,+1} by cluster", 2,
      2.0, 1.0, marginal,
      [](const Vector& x, Rng&) { return x[0] >= 0.0 ? 1.0 : -1.0; });
}

}  // namespace

SyntheticTask make_builtin_task(const std::string& name) {
  if (name == "lin1d") return make_lin1d();
  if (name == "bimodal1d") return make_bimodal1d();
  if (name == "mix2d") return make_mix2d(false);
  if (name == "mix2d01") return make_mix2d(true);
  throw std::invalid_argument("make_builtin_task: unknown task '" + name + "'");
}

std::vector<std::string> builtin_task_names() {
  return {"lin1d", "bimodal1d", "mix2d", "mix2d01"};
}

Pool sample_iid(const SyntheticTask& task, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_iid: m must be >= 1");
  Rng rng(derive_seed(task.seed(), seed));
  Pool pool(task.dim(), task.domain_bound(), task.label_bound());
  for (std::size_t i = 0; i < m; ++i) {
    const Vector x = task.sample_x(rng);
    pool.add(x, task.label_of(x, rng));
  }
  return pool;
}

Pool sample_unlabeled(const SyntheticTask& task, std::size_t m,
                      std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_unlabeled: m must be >= 1");
  Rng rng(derive_seed(task.seed(), seed));
  Pool pool(task.dim(), task.domain_bound(), task.label_bound());
  for (std::size_t i = 0; i < m; ++i) pool.add(task.sample_x(rng));
  return pool;
}

}  // namespace alipm
