#include "alipm/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alipm {

namespace {

constexpr std::array<SettingRow, 6> kRows = {{
    {SettingId::LIN_L1, "LIN_L1", "linear", LossKind::L1, Generator::Kantorovich},
    {SettingId::LIN_L2, "LIN_L2", "linear", LossKind::L2, Generator::TotalVariation},
    {SettingId::GAUSS_L1, "GAUSS_L1", "gaussian", LossKind::L1, Generator::Kantorovich},
    {SettingId::LOGISTIC_LOG, "LOGISTIC_LOG", "logistic", LossKind::LOG,
     Generator::TotalVariation},
    {SettingId::SVM_HINGE, "SVM_HINGE", "svm", LossKind::HINGE,
     Generator::Kantorovich},
    {SettingId::NN_HINGE, "NN_HINGE", "relu_network", LossKind::HINGE,
     Generator::Kantorovich},
}};

// Rescale only past this relative slack, so reprojecting a projected
// hypothesis is a bitwise no-op.
constexpr double kProjSlack = 1e-13;

constexpr double kLogClamp = 1e-12;

}  // namespace

const std::array<SettingRow, 6>& all_setting_rows() { return kRows; }

const SettingRow& setting_row(SettingId id) {
  for (const auto& row : kRows)
    if (row.id == id) return row;
  throw std::logic_error("setting_row: unknown id");
}

SettingId parse_setting(const std::string& s) {
  for (const auto& row : kRows)
    if (s == row.name) return row.id;
  throw std::invalid_argument("unknown setting '" + s + "'");
}

std::string to_string(SettingId id) { return setting_row(id).name; }

std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::L1: return "l1";
    case LossKind::L2: return "l2";
    case LossKind::LOG: return "log";
    case LossKind::HINGE: return "hinge";
  }
  return "?";
}

struct HypothesisMutator {
  static Vector& w(Hypothesis& h) { return h.w_; }
  static double& b(Hypothesis& h) { return h.b_; }
  static std::vector<Matrix>& layer_w(Hypothesis& h) { return h.layer_w_; }
  static std::vector<Vector>& layer_b(Hypothesis& h) { return h.layer_b_; }
  static Vector& out_w(Hypothesis& h) { return h.out_w_; }
  static double& out_b(Hypothesis& h) { return h.out_b_; }
  static Hypothesis raw(SettingId id, DomainBounds bounds) {
    Hypothesis h;
    h.setting_ = id;
    h.bounds_ = bounds;
    return h;
  }
  static Matrix& centers(Hypothesis& h) { return h.centers_; }
  static double& sigma(Hypothesis& h) { return h.sigma_; }
};

Hypothesis Hypothesis::linear(SettingId id, Vector w, double b,
                              DomainBounds bounds) {
  if (id != SettingId::LIN_L1 && id != SettingId::LIN_L2 &&
      id != SettingId::SVM_HINGE)
    throw std::invalid_argument("Hypothesis::linear: wrong setting");
  if (w.size() == 0) throw std::invalid_argument("Hypothesis::linear: empty w");
  Hypothesis h = HypothesisMutator::raw(id, bounds);
  h.w_ = std::move(w);
  h.b_ = b;
  return h;
}

Hypothesis Hypothesis::gaussian(Vector w, Matrix centers, double sigma,
                                DomainBounds bounds) {
  if (sigma <= 0.0)
    throw std::invalid_argument("Hypothesis::gaussian: sigma must be positive");
  if (centers.rows() != w.size())
    throw std::invalid_argument("Hypothesis::gaussian: one weight per center");
  if (w.size() == 0)
    throw std::invalid_argument("Hypothesis::gaussian: empty parameters");
  Hypothesis h = HypothesisMutator::raw(SettingId::GAUSS_L1, bounds);
  h.w_ = std::move(w);
  h.centers_ = std::move(centers);
  h.sigma_ = sigma;
  return h;
}

Hypothesis Hypothesis::logistic(Vector w, DomainBounds bounds) {
  if (w.size() == 0) throw std::invalid_argument("Hypothesis::logistic: empty w");
  Hypothesis h = HypothesisMutator::raw(SettingId::LOGISTIC_LOG, bounds);
  h.w_ = std::move(w);
  return h;
}

Hypothesis Hypothesis::relu_network(std::vector<Matrix> layer_w,
                                    std::vector<Vector> layer_b, Vector out_w,
                                    double out_b, DomainBounds bounds) {
  if (layer_w.empty())
    throw std::invalid_argument("Hypothesis::relu_network: need >= 1 layer");
  if (layer_b.size() != layer_w.size())
    throw std::invalid_argument("Hypothesis::relu_network: bias/weight count");
  for (std::size_t l = 0; l < layer_w.size(); ++l) {
    if (layer_b[l].size() != layer_w[l].rows())
      throw std::invalid_argument("Hypothesis::relu_network: bias shape");
    if (l > 0 && layer_w[l].cols() != layer_w[l - 1].rows())
      throw std::invalid_argument("Hypothesis::relu_network: layer shapes");
  }
  if (out_w.size() != layer_w.back().rows())
    throw std::invalid_argument("Hypothesis::relu_network: output shape");
  Hypothesis h = HypothesisMutator::raw(SettingId::NN_HINGE, bounds);
  h.layer_w_ = std::move(layer_w);
  h.layer_b_ = std::move(layer_b);
  h.out_w_ = std::move(out_w);
  h.out_b_ = out_b;
  return h;
}

int Hypothesis::input_dim() const {
  switch (setting_) {
    case SettingId::GAUSS_L1: return static_cast<int>(centers_.cols());
    case SettingId::NN_HINGE: return static_cast<int>(layer_w_.front().cols());
    default: return static_cast<int>(w_.size());
  }
}

double Hypothesis::predict(const Vector& x) const {
  if (x.size() != input_dim())
    throw std::invalid_argument("Hypothesis::predict: dimension mismatch");
  switch (setting_) {
    case SettingId::LIN_L1:
    case SettingId::LIN_L2:
    case SettingId::SVM_HINGE:
      return w_.dot(x) + b_;
    case SettingId::LOGISTIC_LOG:
      return 1.0 / (1.0 + std::exp(-w_.dot(x)));
    case SettingId::GAUSS_L1: {
      const double denom = 2.0 * sigma_ * sigma_;
      double sum = 0.0;
      for (Eigen::Index i = 0; i < w_.size(); ++i) {
        const double d2 = (x.transpose() - centers_.row(i)).squaredNorm();
        sum += w_[i] * std::exp(-d2 / denom);
      }
      return sum;
    }
    case SettingId::NN_HINGE: {
      Vector a = x;
      const std::size_t L = layer_w_.size();
      for (std::size_t l = 0; l < L; ++l) {
        a = layer_w_[l] * a + layer_b_[l];
        if (l + 1 < L) a = a.cwiseMax(0.0);  // ReLU between layers only
      }
      return out_w_.dot(a) + out_b_;
    }
  }
  throw std::logic_error("predict: unreachable");
}

bool Hypothesis::operator==(const Hypothesis& other) const {
  if (setting_ != other.setting_) return false;
  if (w_.size() != other.w_.size() || w_ != other.w_) return false;
  if (b_ != other.b_ || sigma_ != other.sigma_ || out_b_ != other.out_b_)
    return false;
  if (centers_.rows() != other.centers_.rows() || centers_ != other.centers_)
    return false;
  if (layer_w_.size() != other.layer_w_.size()) return false;
  for (std::size_t l = 0; l < layer_w_.size(); ++l)
    if (layer_w_[l] != other.layer_w_[l] || layer_b_[l] != other.layer_b_[l])
      return false;
  if (out_w_.size() != other.out_w_.size() || out_w_ != other.out_w_)
    return false;
  return true;
}

double loss_value(LossKind kind, double y, double pred) {
  switch (kind) {
    case LossKind::L1:
      return std::abs(y - pred);
    case LossKind::L2:
      return (y - pred) * (y - pred);
    case LossKind::LOG: {
      if (y != 0.0 && y != 1.0)
        throw std::invalid_argument("loss_value: LOG labels are {0,1}");
      const double p = std::clamp(pred, kLogClamp, 1.0 - kLogClamp);
      return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    case LossKind::HINGE:
      if (y != -1.0 && y != 1.0)
        throw std::invalid_argument("loss_value: HINGE labels are {-1,+1}");
      return std::max(0.0, 1.0 - y * pred);
  }
  throw std::logic_error("loss_value: unreachable");
}

double loss_value(const Hypothesis& h, const Vector& x, double y) {
  return loss_value(setting_row(h.setting()).loss, y, h.predict(x));
}

double spectral_norm(const Matrix& m, double tol, int max_iter) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Vector v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = 1.0 + 1e-3 * static_cast<double>(i);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector u = m * v;
    const double un = u.norm();
    if (un == 0.0) return 0.0;
    Vector next = m.transpose() * (u / un);
    const double nn = next.norm();
    if (nn == 0.0) return un;
    v = next / nn;
    if (std::abs(nn - sigma) <= tol * std::max(1.0, nn)) return nn;
    sigma = nn;
  }
  return sigma;
}

namespace {

double nn_product(const Hypothesis& h) {
  double p = h.output_weights().norm();
  for (const auto& w : h.layer_weights()) p *= spectral_norm(w);
  return p;
}

double logistic_sup(double wnorm, double mx) {
  const double z = wnorm * mx;
  return z > 40.0 ? z : std::log1p(std::exp(z));
}

}  // namespace

Certificate certify(const Hypothesis& h, double slack) {
  const DomainBounds& bd = h.bounds();
  Certificate c;
  c.setting = h.setting();
  switch (h.setting()) {
    case SettingId::LIN_L1:
    case SettingId::SVM_HINGE:
      c.kind = Certificate::Kind::lipschitz_bound;
      c.value = h.w().norm();
      c.passes = c.value <= 1.0 + slack;
      return c;
    case SettingId::GAUSS_L1:
      c.kind = Certificate::Kind::lipschitz_bound;
      c.value = 2.0 * bd.mx / (h.sigma() * h.sigma()) * h.w().lpNorm<1>();
      c.passes = c.value <= 1.0 + slack;
      return c;
    case SettingId::NN_HINGE:
      c.kind = Certificate::Kind::lipschitz_bound;
      c.value = nn_product(h);
      c.passes = c.value <= 1.0 + slack;
      return c;
    case SettingId::LIN_L2: {
      c.kind = Certificate::Kind::sup_bound;
      const double base = bd.my + h.w().norm() * bd.mx + std::abs(h.bias());
      c.value = base * base;
      c.passes = base <= 1.0 + slack;
      return c;
    }
    case SettingId::LOGISTIC_LOG:
      c.kind = Certificate::Kind::sup_bound;
      c.value = logistic_sup(h.w().norm(), bd.mx);
      c.passes = c.value <= 1.0 + slack;
      return c;
  }
  throw std::logic_error("certify: unreachable");
}

namespace {

Hypothesis rescale_w(const Hypothesis& h, double radius, bool l1_norm) {
  const double n = l1_norm ? h.w().lpNorm<1>() : h.w().norm();
  if (n <= radius * (1.0 + kProjSlack)) return h;
  Hypothesis out = h;
  HypothesisMutator::w(out) *= radius / n;
  return out;
}

}  // namespace

Hypothesis project(const Hypothesis& h) {
  const DomainBounds& bd = h.bounds();
  switch (h.setting()) {
    case SettingId::LIN_L1:
    case SettingId::SVM_HINGE:
      return rescale_w(h, 1.0, false);
    case SettingId::LIN_L2: {
      if (bd.mx <= 0.0)
        throw std::invalid_argument("project: LIN_L2 needs M_X > 0");
      const double radius = (1.0 - bd.my - std::abs(h.bias())) / bd.mx;
      if (radius <= 0.0)
        throw std::invalid_argument("project: LIN_L2 feasible radius <= 0");
      return rescale_w(h, radius, false);
    }
    case SettingId::GAUSS_L1: {
      if (bd.mx <= 0.0) return h;  // condition is vacuous on a point domain
      const double radius = h.sigma() * h.sigma() / (2.0 * bd.mx);
      return rescale_w(h, radius, true);
    }
    case SettingId::LOGISTIC_LOG: {
      if (bd.mx <= 0.0)
        throw std::invalid_argument("project: LOGISTIC_LOG needs M_X > 0");
      const double radius = std::log(std::numbers::e - 1.0) / bd.mx;
      return rescale_w(h, radius, false);
    }
    case SettingId::NN_HINGE: {
      const double p = nn_product(h);
      if (p <= 1.0 + kProjSlack) return h;
      const auto factors = static_cast<double>(h.layer_weights().size() + 1);
      const double gamma = std::pow(p, -1.0 / factors);
      Hypothesis out = h;
      HypothesisMutator::out_w(out) *= gamma;
      for (auto& w : HypothesisMutator::layer_w(out)) w *= gamma;
      return out;
    }
  }
  throw std::logic_error("project: unreachable");
}

namespace {

double draw_probe_label(LossKind loss, const SyntheticTask& task, Rng& rng) {
  switch (loss) {
    case LossKind::L1:
    case LossKind::L2:
      return rng.uniform(-task.label_bound(), task.label_bound());
    case LossKind::LOG:
      return (rng.next_u64() & 1) ? 1.0 : 0.0;
    case LossKind::HINGE:
      return (rng.next_u64() & 1) ? 1.0 : -1.0;
  }
  throw std::logic_error("draw_probe_label: unreachable");
}

}  // namespace

double probe_membership(const Hypothesis& h, const SyntheticTask& task,
                        std::size_t trials, std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("probe_membership: trials must be >= 1");
  const SettingRow& row = setting_row(h.setting());
  Rng rng(derive_seed(seed, 0xA1));
  double worst = 0.0;
  if (row.generator == Generator::Kantorovich) {
    const double min_sep = 1e-4 * std::max(1.0, task.domain_bound());
    for (std::size_t t = 0; t < trials; ++t) {
      const Vector x1 = task.sample_x(rng);
      Vector x2 = task.sample_x(rng);
      int tries = 0;
      while ((x1 - x2).norm() < min_sep && ++tries < 64)
        x2 = task.sample_x(rng);
      const double sep = (x1 - x2).norm();
      const double y = draw_probe_label(row.loss, task, rng);
      if (sep < min_sep) continue;
      const double ratio =
          std::abs(loss_value(h, x1, y) - loss_value(h, x2, y)) / sep;
      worst = std::max(worst, ratio);
    }
  } else {
    for (std::size_t t = 0; t < trials; ++t) {
      const Vector x = task.sample_x(rng);
      const double y = draw_probe_label(row.loss, task, rng);
      worst = std::max(worst, std::abs(loss_value(h, x, y)));
    }
  }
  return worst;
}

double weighted_loss(const Hypothesis& h, const Pool& data,
                     const std::vector<double>& coeff) {
  const std::size_t m = data.size();
  if (m == 0) throw std::invalid_argument("weighted_loss: empty data");
  if (coeff.size() != m)
    throw std::invalid_argument("weighted_loss: coefficient count");
  const LossKind loss = setting_row(h.setting()).loss;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto y = data.label(i);
    if (!y) throw std::invalid_argument("weighted_loss: unlabeled point");
    sum += coeff[i] * loss_value(loss, *y, h.predict(data.point(i)));
  }
  return sum / static_cast<double>(m);
}

namespace {

double dloss_dpred(LossKind kind, double y, double pred) {
  switch (kind) {
    case LossKind::L1:
      return pred > y ? 1.0 : (pred < y ? -1.0 : 0.0);
    case LossKind::L2:
      return 2.0 * (pred - y);
    case LossKind::LOG: {
      const double p = std::clamp(pred, kLogClamp, 1.0 - kLogClamp);
      return -y / p + (1.0 - y) / (1.0 - p);
    }
    case LossKind::HINGE:
      return (1.0 - y * pred > 0.0) ? -y : 0.0;
  }
  throw std::logic_error("dloss_dpred: unreachable");
}

ParamVector zero_grad_like(const Hypothesis& h) {
  ParamVector g;
  g.w = Vector::Zero(h.w().size());
  for (const auto& w : h.layer_weights())
    g.layer_w.push_back(Matrix::Zero(w.rows(), w.cols()));
  for (const auto& b : h.layer_biases())
    g.layer_b.push_back(Vector::Zero(b.size()));
  g.out_w = Vector::Zero(h.output_weights().size());
  return g;
}

}  // namespace

ParamVector weighted_loss_gradient(const Hypothesis& h, const Pool& data,
                                   const std::vector<double>& coeff) {
  const std::size_t m = data.size();
  if (m == 0) throw std::invalid_argument("weighted_loss_gradient: empty data");
  if (coeff.size() != m)
    throw std::invalid_argument("weighted_loss_gradient: coefficient count");
  const LossKind loss = setting_row(h.setting()).loss;
  ParamVector g = zero_grad_like(h);

  const std::size_t L = h.layer_weights().size();
  std::vector<Vector> acts(L + 1);  // network activations, reused per sample

  for (std::size_t i = 0; i < m; ++i) {
    const auto yopt = data.label(i);
    if (!yopt)
      throw std::invalid_argument("weighted_loss_gradient: unlabeled point");
    const double y = *yopt;
    const Vector& x = data.point(i);

    switch (h.setting()) {
      case SettingId::LIN_L1:
      case SettingId::LIN_L2:
      case SettingId::SVM_HINGE: {
        const double dl = coeff[i] * dloss_dpred(loss, y, h.w().dot(x) + h.bias());
        g.w += dl * x;
        g.b += dl;
        break;
      }
      case SettingId::LOGISTIC_LOG: {
        const double p = 1.0 / (1.0 + std::exp(-h.w().dot(x)));
        const double dl = coeff[i] * dloss_dpred(loss, y, p) * p * (1.0 - p);
        g.w += dl * x;
        break;
      }
      case SettingId::GAUSS_L1: {
        const double denom = 2.0 * h.sigma() * h.sigma();
        double pred = 0.0;
        Vector feats(h.w().size());
        for (Eigen::Index k = 0; k < h.w().size(); ++k) {
          const double d2 = (x.transpose() - h.centers().row(k)).squaredNorm();
          feats[k] = std::exp(-d2 / denom);
          pred += h.w()[k] * feats[k];
        }
        g.w += coeff[i] * dloss_dpred(loss, y, pred) * feats;
        break;
      }
      case SettingId::NN_HINGE: {
        acts[0] = x;
        for (std::size_t l = 0; l < L; ++l) {
          acts[l + 1] = h.layer_weights()[l] * acts[l] + h.layer_biases()[l];
          if (l + 1 < L) acts[l + 1] = acts[l + 1].cwiseMax(0.0);
        }
        const double score = h.output_weights().dot(acts[L]) + h.output_bias();
        const double dl = coeff[i] * dloss_dpred(loss, y, score);
        if (dl == 0.0) break;
        g.out_w += dl * acts[L];
        g.out_b += dl;
        Vector delta = dl * h.output_weights();
        for (std::size_t l = L; l-- > 0;) {
          g.layer_w[l] += delta * acts[l].transpose();
          g.layer_b[l] += delta;
          if (l > 0) {
            delta = h.layer_weights()[l].transpose() * delta;
            // subgradient through the ReLU applied to acts[l]
            for (Eigen::Index k = 0; k < delta.size(); ++k)
              if (acts[l][k] <= 0.0) delta[k] = 0.0;
          }
        }
        break;
      }
    }
  }

  const double inv_m = 1.0 / static_cast<double>(m);
  g.w *= inv_m;
  g.b *= inv_m;
  for (auto& gw : g.layer_w) gw *= inv_m;
  for (auto& gb : g.layer_b) gb *= inv_m;
  g.out_w *= inv_m;
  g.out_b *= inv_m;
  return g;
}

Hypothesis apply_step(const Hypothesis& h, const ParamVector& g, double scale) {
  Hypothesis out = h;
  if (g.w.size() > 0) HypothesisMutator::w(out) += scale * g.w;
  HypothesisMutator::b(out) += scale * g.b;
  auto& lw = HypothesisMutator::layer_w(out);
  auto& lb = HypothesisMutator::layer_b(out);
  for (std::size_t l = 0; l < lw.size(); ++l) {
    lw[l] += scale * g.layer_w[l];
    lb[l] += scale * g.layer_b[l];
  }
  if (g.out_w.size() > 0) HypothesisMutator::out_w(out) += scale * g.out_w;
  HypothesisMutator::out_b(out) += scale * g.out_b;
  return out;
}

Hypothesis clamp_biases(const Hypothesis& h, double box) {
  Hypothesis out = h;
  HypothesisMutator::b(out) = std::clamp(h.bias(), -box, box);
  for (auto& b : HypothesisMutator::layer_b(out))
    b = b.cwiseMax(-box).cwiseMin(box);
  HypothesisMutator::out_b(out) = std::clamp(h.output_bias(), -box, box);
  return out;
}

namespace {

Matrix draw_centers(const Pool& pool, std::size_t num, Rng& rng) {
  const std::size_t n = std::min<std::size_t>(num, pool.size());
  if (n == 0) throw std::invalid_argument("draw_centers: empty pool");
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.uniform_index(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  Matrix centers(n, pool.dim());
  for (std::size_t i = 0; i < n; ++i) centers.row(i) = pool.point(idx[i]);
  return centers;
}

std::vector<Eigen::Index> network_dims(int input_dim,
                                       const std::vector<int>& hidden) {
  std::vector<Eigen::Index> dims = {input_dim};
  for (int hsize : hidden) {
    if (hsize < 1) throw std::invalid_argument("network_dims: width must be >= 1");
    dims.push_back(hsize);
  }
  if (dims.size() < 2) throw std::invalid_argument("network_dims: need >= 1 layer");
  return dims;
}

}  // namespace

Hypothesis zero_hypothesis(SettingId setting, const Pool& pool,
                           const TrainConfig& cfg) {
  const DomainBounds bounds{pool.domain_bound(), pool.label_bound()};
  switch (setting) {
    case SettingId::LIN_L1:
    case SettingId::LIN_L2:
    case SettingId::SVM_HINGE:
      return Hypothesis::linear(setting, Vector::Zero(pool.dim()), 0.0, bounds);
    case SettingId::LOGISTIC_LOG:
      return Hypothesis::logistic(Vector::Zero(pool.dim()), bounds);
    case SettingId::GAUSS_L1: {
      Rng rng(derive_seed(cfg.seed, 0xC0));
      const Matrix centers = draw_centers(pool, cfg.num_centers, rng);
      return Hypothesis::gaussian(Vector::Zero(centers.rows()), centers,
                                  cfg.sigma, bounds);
    }
    case SettingId::NN_HINGE: {
      const auto dims = network_dims(pool.dim(), cfg.hidden);
      std::vector<Matrix> ws;
      std::vector<Vector> bs;
      for (std::size_t l = 1; l < dims.size(); ++l) {
        ws.push_back(Matrix::Zero(dims[l], dims[l - 1]));
        bs.push_back(Vector::Zero(dims[l]));
      }
      return Hypothesis::relu_network(std::move(ws), std::move(bs),
                                      Vector::Zero(dims.back()), 0.0, bounds);
    }
  }
  throw std::logic_error("zero_hypothesis: unreachable");
}

Hypothesis random_hypothesis(SettingId setting, Rng& rng, const Pool& pool,
                             const TrainConfig& cfg, double param_scale) {
  const DomainBounds bounds{pool.domain_bound(), pool.label_bound()};
  const int dim = pool.dim();
  auto randn_vec = [&](Eigen::Index n, double scale) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
    return v;
  };
  switch (setting) {
    case SettingId::LIN_L1:
    case SettingId::SVM_HINGE:
      return Hypothesis::linear(setting, randn_vec(dim, param_scale),
                                param_scale * rng.normal(), bounds);
    case SettingId::LIN_L2: {
      // Bias drawn inside the feasible margin so the radius stays positive.
      const double slack = std::max(0.0, 1.0 - bounds.my);
      const double b = rng.uniform(-0.9 * slack, 0.9 * slack);
      return Hypothesis::linear(setting, randn_vec(dim, param_scale), b, bounds);
    }
    case SettingId::LOGISTIC_LOG:
      return Hypothesis::logistic(randn_vec(dim, param_scale), bounds);
    case SettingId::GAUSS_L1: {
      const Matrix centers = draw_centers(pool, cfg.num_centers, rng);
      return Hypothesis::gaussian(randn_vec(centers.rows(), param_scale),
                                  centers, cfg.sigma, bounds);
    }
    case SettingId::NN_HINGE: {
      const auto dims = network_dims(dim, cfg.hidden);
      std::vector<Matrix> ws;
      std::vector<Vector> bs;
      for (std::size_t l = 1; l < dims.size(); ++l) {
        const double scale =
            param_scale / std::sqrt(static_cast<double>(dims[l - 1]));
        Matrix w(dims[l], dims[l - 1]);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
          for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = scale * rng.normal();
        ws.push_back(std::move(w));
        bs.push_back(randn_vec(dims[l], 0.1 * param_scale));
      }
      const double oscale =
          param_scale / std::sqrt(static_cast<double>(dims.back()));
      return Hypothesis::relu_network(std::move(ws), std::move(bs),
                                      randn_vec(dims.back(), oscale),
                                      0.1 * param_scale * rng.normal(), bounds);
    }
  }
  throw std::logic_error("random_hypothesis: unreachable");
}

namespace {

Hypothesis initial_hypothesis(SettingId setting, const Pool& data,
                              const TrainConfig& cfg) {
  if (setting == SettingId::NN_HINGE) {
    // Zero network weights have zero subgradient everywhere; start random.
    Rng rng(derive_seed(cfg.seed, 0xC1));
    return project(random_hypothesis(setting, rng, data, cfg, 0.5));
  }
  return project(zero_hypothesis(setting, data, cfg));
}

}  // namespace

TrainResult train(SettingId setting, const Pool& data, const TrainConfig& cfg) {
  if (data.size() == 0) throw std::invalid_argument("train: empty data");
  if (!data.fully_labeled())
    throw std::invalid_argument("train: data must be fully labeled");
  if (cfg.iters < 1) throw std::invalid_argument("train: iters must be >= 1");

  const std::vector<double> ones(data.size(), 1.0);
  const double l2_bias_box = std::max(0.0, (1.0 - data.label_bound()) / 2.0);

  Hypothesis current = initial_hypothesis(setting, data, cfg);
  Hypothesis best = current;
  double best_risk = weighted_loss(current, data, ones);
  std::vector<double> trace = {best_risk};
  trace.reserve(cfg.iters + 1);

  for (std::size_t t = 1; t <= cfg.iters; ++t) {
    const ParamVector g = weighted_loss_gradient(current, data, ones);
    const double step = cfg.step_scale / std::sqrt(static_cast<double>(t));
    current = apply_step(current, g, -step);
    if (setting == SettingId::LIN_L2)
      current = clamp_biases(current, l2_bias_box);
    current = project(current);
    const double risk = weighted_loss(current, data, ones);
    if (risk < best_risk) {
      best_risk = risk;
      best = current;
    }
    trace.push_back(best_risk);
  }
  return {best, trace};
}

}  // namespace alipm
