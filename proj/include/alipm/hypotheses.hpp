#pragma once

#include "alipm/core.hpp"
#include "alipm/ipm.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace alipm {

enum class SettingId { LIN_L1, LIN_L2, GAUSS_L1, LOGISTIC_LOG, SVM_HINGE, NN_HINGE };
enum class LossKind { L1, L2, LOG, HINGE };

/// One row of the setting registry: a (hypothesis class, loss, constraint,
/// generator) quadruple. The constraint itself is evaluated by certify().
struct SettingRow {
  SettingId id;
  const char* name;
  const char* hypothesis_class;
  LossKind loss;
  Generator generator;
};

const std::array<SettingRow, 6>& all_setting_rows();
const SettingRow& setting_row(SettingId id);
SettingId parse_setting(const std::string& s);
std::string to_string(SettingId id);
std::string to_string(LossKind k);

/// Compact-domain constants the row conditions reference.
struct DomainBounds {
  double mx = 1.0;
  double my = 1.0;
};

/// A parameterized predictor from one of the setting rows. Value type;
/// construct through the factories, which validate shapes.
///
/// predict() evaluates the class formula. For the hinge-loss settings
/// (SVM_HINGE, NN_HINGE) it returns the pre-sign score, which is what the
/// hinge loss is defined on; LOGISTIC_LOG returns the sigmoid output in (0,1).
class Hypothesis {
 public:
  static Hypothesis linear(SettingId id, Vector w, double b, DomainBounds bounds);
  static Hypothesis gaussian(Vector w, Matrix centers, double sigma,
                             DomainBounds bounds);
  static Hypothesis logistic(Vector w, DomainBounds bounds);
  static Hypothesis relu_network(std::vector<Matrix> layer_w,
                                 std::vector<Vector> layer_b, Vector out_w,
                                 double out_b, DomainBounds bounds);

  SettingId setting() const { return setting_; }
  const DomainBounds& bounds() const { return bounds_; }
  int input_dim() const;

  double predict(const Vector& x) const;

  // Linear / logistic / SVM parameters.
  const Vector& w() const { return w_; }
  double bias() const { return b_; }

  // Gaussian parameters (centers are fixed at construction, one per row).
  const Matrix& centers() const { return centers_; }
  double sigma() const { return sigma_; }

  // Network parameters.
  const std::vector<Matrix>& layer_weights() const { return layer_w_; }
  const std::vector<Vector>& layer_biases() const { return layer_b_; }
  const Vector& output_weights() const { return out_w_; }
  double output_bias() const { return out_b_; }

  bool operator==(const Hypothesis& other) const;

 private:
  Hypothesis() = default;

  SettingId setting_ = SettingId::LIN_L1;
  DomainBounds bounds_;
  Vector w_;
  double b_ = 0.0;
  Matrix centers_;
  double sigma_ = 1.0;
  std::vector<Matrix> layer_w_;
  std::vector<Vector> layer_b_;
  Vector out_w_;
  double out_b_ = 0.0;

  friend struct HypothesisMutator;
};

/// Loss value; y must be admissible for the loss (HINGE: {-1,+1},
/// LOG: {0,1}). LOG clamps the prediction to [1e-12, 1-1e-12].
double loss_value(LossKind kind, double y, double pred);

/// Loss of h at a labeled sample, using the setting's loss kind.
double loss_value(const Hypothesis& h, const Vector& x, double y);

/// Analytic generator-membership certificate for the hypothesis' row.
///   LIN_L1 / SVM_HINGE : ||w||_2                      (Lipschitz bound)
///   GAUSS_L1           : (2 M_X / sigma^2) ||w||_1    (Lipschitz bound)
///   NN_HINGE           : ||o||_2 prod_i ||W_i||_2     (Lipschitz bound)
///   LIN_L2             : (M_Y + ||w||_2 M_X + |b|)^2  (sup bound)
///   LOGISTIC_LOG       : log(1 + e^{||w||_2 M_X})     (sup bound)
struct Certificate {
  enum class Kind { lipschitz_bound, sup_bound };
  SettingId setting;
  Kind kind;
  double value;
  bool passes;
};

constexpr double kCertSlack = 1e-12;

Certificate certify(const Hypothesis& h, double slack = kCertSlack);

/// Projection onto the row's feasible set by radial rescaling of the
/// constrained norm; networks rescale every factor by a common
/// (product)^(-1/(L+1)). Feasible inputs are returned unchanged, so the
/// operation is exactly idempotent. Throws when the feasible radius is
/// nonpositive (LIN_L2 with M_Y + |b| >= 1, LOGISTIC_LOG with M_X <= 0).
Hypothesis project(const Hypothesis& h);

/// Empirical falsification probe of the certificate claim. Kantorovich rows
/// report the worst loss difference quotient |l(x1)-l(x2)| / ||x1-x2|| over
/// sampled triples (x1, x2, y); TV rows report the worst |l(x)| over (x, y).
/// x pairs are redrawn to keep ||x1-x2|| >= 1e-4 max(1, M_X); y is drawn from
/// the setting's label space ({-1,+1}, {0,1}, or U[-M_Y, M_Y]).
double probe_membership(const Hypothesis& h, const SyntheticTask& task,
                        std::size_t trials, std::uint64_t seed);

/// Largest singular value by power iteration on M^T M.
double spectral_norm(const Matrix& m, double tol = 1e-10, int max_iter = 10000);

struct TrainConfig {
  std::size_t iters = 2000;
  double step_scale = 0.5;
  std::uint64_t seed = 0;
  std::vector<int> hidden = {4};  // network hidden widths
  std::size_t num_centers = 8;    // Gaussian centers drawn from the data
  double sigma = 0.5;             // Gaussian kernel width
};

struct TrainResult {
  Hypothesis hypothesis;
  std::vector<double> best_risk_trace;  // running best, non-increasing
};

/// Projected subgradient descent on the empirical risk, step step_scale/sqrt(t),
/// project() after every step, best-iterate return. The LIN_L2 bias is kept in
/// |b| <= (1 - M_Y)/2 so the feasible radius stays positive during descent.
TrainResult train(SettingId setting, const Pool& data, const TrainConfig& cfg);

/// All-zero (feasible) hypothesis; Gaussian centers and network shapes come
/// from cfg and the pool.
Hypothesis zero_hypothesis(SettingId setting, const Pool& pool,
                           const TrainConfig& cfg);

/// Unprojected random parameter draw, for probes and property tests.
Hypothesis random_hypothesis(SettingId setting, Rng& rng, const Pool& pool,
                             const TrainConfig& cfg, double param_scale = 1.0);

/// Gradient-shaped view of the parameters of one Hypothesis.
struct ParamVector {
  Vector w;
  double b = 0.0;
  std::vector<Matrix> layer_w;
  std::vector<Vector> layer_b;
  Vector out_w;
  double out_b = 0.0;
};

/// (1/m) sum_i coeff_i * loss(y_i, h(x_i)) over a fully labeled pool.
double weighted_loss(const Hypothesis& h, const Pool& data,
                     const std::vector<double>& coeff);

/// Subgradient of weighted_loss with respect to the learnable parameters.
ParamVector weighted_loss_gradient(const Hypothesis& h, const Pool& data,
                                   const std::vector<double>& coeff);

/// h with parameters shifted by scale * g.
Hypothesis apply_step(const Hypothesis& h, const ParamVector& g, double scale);

/// h with every bias coordinate clamped to [-box, box]; weights untouched.
Hypothesis clamp_biases(const Hypothesis& h, double box);

}  // namespace alipm
