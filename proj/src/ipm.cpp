#include "alipm/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace alipm {

std::string to_string(Generator g) {
  return g == Generator::Kantorovich ? "kantorovich" : "total_variation";
}

std::string to_string(IpmMethod m) {
  switch (m) {
    case IpmMethod::closed_form_1d: return "closed_form_1d";
    case IpmMethod::exact_transport: return "exact_transport";
    case IpmMethod::histogram_tv: return "histogram_tv";
    case IpmMethod::discrete_tv: return "discrete_tv";
  }
  return "?";
}

Generator parse_generator(const std::string& s) {
  if (s == "k" || s == "kantorovich") return Generator::Kantorovich;
  if (s == "tv" || s == "total_variation") return Generator::TotalVariation;
  throw std::invalid_argument("unknown generator '" + s + "'");
}

IpmEstimate kantorovich_1d(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("kantorovich_1d: empty input");
  if (a.size() != b.size())
    throw std::invalid_argument("kantorovich_1d: sizes must match");
  std::stable_sort(a.begin(), a.end());
  std::stable_sort(b.begin(), b.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  IpmEstimate est;
  est.value = sum / static_cast<double>(a.size());
  est.generator = Generator::Kantorovich;
  est.method = IpmMethod::closed_form_1d;
  est.size_a = a.size();
  est.size_b = b.size();
  return est;
}

namespace {

constexpr double kMassTol = 1e-12;

// Successive shortest paths with potentials on the dense bipartite
// transportation graph. Supplies and demands are real masses; each
// augmentation saturates a supply, a demand, or a residual arc.
double min_cost_transport(const Matrix& cost, Vector supply, Vector demand) {
  const int n = static_cast<int>(supply.size());
  const int m = static_cast<int>(demand.size());
  const int V = n + m;
  const double inf = std::numeric_limits<double>::infinity();

  Matrix flow = Matrix::Zero(n, m);
  Vector pot_a = Vector::Zero(n);
  Vector pot_b = Vector::Zero(m);

  double remaining = supply.sum();
  const long max_rounds = 4L * V * V;
  long rounds = 0;

  std::vector<double> dist(V);
  std::vector<char> done(V);
  std::vector<int> parent(V);  // predecessor node, -1 for sources

  while (remaining > kMassTol) {
    if (++rounds > max_rounds)
      throw std::runtime_error("kantorovich_exact: augmentation cap exceeded");

    std::fill(dist.begin(), dist.end(), inf);
    std::fill(done.begin(), done.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    for (int i = 0; i < n; ++i)
      if (supply[i] > kMassTol) dist[i] = 0.0;

    // Dense Dijkstra over reduced costs (clamped at zero against roundoff).
    for (int it = 0; it < V; ++it) {
      int u = -1;
      double best = inf;
      for (int v = 0; v < V; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      if (u < 0) break;
      done[u] = 1;
      if (u < n) {
        for (int j = 0; j < m; ++j) {
          const double rc = std::max(0.0, cost(u, j) + pot_a[u] - pot_b[j]);
          if (dist[u] + rc < dist[n + j]) {
            dist[n + j] = dist[u] + rc;
            parent[n + j] = u;
          }
        }
      } else {
        const int j = u - n;
        for (int i = 0; i < n; ++i) {
          if (flow(i, j) <= kMassTol) continue;
          const double rc = std::max(0.0, -cost(i, j) + pot_b[j] - pot_a[i]);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            parent[i] = u;
          }
        }
      }
    }

    int sink = -1;
    double sink_dist = inf;
    for (int j = 0; j < m; ++j)
      if (demand[j] > kMassTol && dist[n + j] < sink_dist) {
        sink_dist = dist[n + j];
        sink = j;
      }
    if (sink < 0)
      throw std::runtime_error("kantorovich_exact: no augmenting path");

    // Johnson update keeps all reduced costs nonnegative for the next round.
    for (int i = 0; i < n; ++i)
      pot_a[i] += std::min(dist[i], sink_dist);
    for (int j = 0; j < m; ++j)
      pot_b[j] += std::min(dist[n + j], sink_dist);

    // Bottleneck along the path.
    double delta = demand[sink];
    int v = n + sink;
    while (parent[v] != -1) {
      const int p = parent[v];
      if (v < n)
        delta = std::min(delta, flow(v, p - n));  // residual demand -> supply arc
      v = p;
    }
    delta = std::min(delta, supply[v]);

    // Apply the augmentation.
    int w = n + sink;
    while (parent[w] != -1) {
      const int p = parent[w];
      if (w >= n)
        flow(p, w - n) += delta;
      else
        flow(w, p - n) -= delta;
      w = p;
    }
    supply[w] -= delta;
    demand[sink] -= delta;
    remaining -= delta;
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) total += flow(i, j) * cost(i, j);
  return total;
}

}  // namespace

IpmEstimate kantorovich_exact(const Matrix& points_a, const Vector& weights_a,
                              const Matrix& points_b, const Vector& weights_b,
                              std::size_t cap) {
  const auto na = static_cast<std::size_t>(points_a.rows());
  const auto nb = static_cast<std::size_t>(points_b.rows());
  if (na == 0 || nb == 0)
    throw std::invalid_argument("kantorovich_exact: empty input");
  if (points_a.cols() != points_b.cols())
    throw std::invalid_argument("kantorovich_exact: dimension mismatch");
  if (weights_a.size() != points_a.rows() || weights_b.size() != points_b.rows())
    throw std::invalid_argument("kantorovich_exact: weight/point size mismatch");
  if (na + nb > cap)
    throw std::invalid_argument("kantorovich_exact: instance exceeds cap");
  if (std::abs(weights_a.sum() - 1.0) > 1e-12 ||
      std::abs(weights_b.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("kantorovich_exact: weights must sum to 1");
  if (weights_a.minCoeff() < 0.0 || weights_b.minCoeff() < 0.0)
    throw std::invalid_argument("kantorovich_exact: negative weight");

  Matrix cost(na, nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      cost(i, j) = (points_a.row(i) - points_b.row(j)).norm();

  IpmEstimate est;
  est.value = min_cost_transport(cost, weights_a, weights_b);
  est.generator = Generator::Kantorovich;
  est.method = IpmMethod::exact_transport;
  est.size_a = na;
  est.size_b = nb;
  return est;
}

IpmEstimate kantorovich_exact(const Matrix& points_a, const Matrix& points_b,
                              std::size_t cap) {
  const Vector wa = Vector::Constant(points_a.rows(), 1.0 / points_a.rows());
  const Vector wb = Vector::Constant(points_b.rows(), 1.0 / points_b.rows());
  return kantorovich_exact(points_a, wa, points_b, wb, cap);
}

IpmEstimate tv_discrete(const Vector& p, const Vector& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_discrete: length mismatch");
  if (p.size() == 0) throw std::invalid_argument("tv_discrete: empty input");
  if (p.minCoeff() < 0.0 || q.minCoeff() < 0.0)
    throw std::invalid_argument("tv_discrete: negative entry");
  if (std::abs(p.sum() - 1.0) > 1e-12 || std::abs(q.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("tv_discrete: inputs must sum to 1");
  IpmEstimate est;
  est.value = (p - q).cwiseAbs().sum();
  est.generator = Generator::TotalVariation;
  est.method = IpmMethod::discrete_tv;
  est.size_a = static_cast<std::size_t>(p.size());
  est.size_b = static_cast<std::size_t>(q.size());
  return est;
}

GridSpec GridSpec::uniform(int dim, int bins) {
  GridSpec g;
  g.bins_per_axis.assign(static_cast<std::size_t>(dim), bins);
  return g;
}

IpmEstimate tv_histogram(const Matrix& a, const Matrix& b, const GridSpec& grid) {
  if (a.rows() == 0 || b.rows() == 0)
    throw std::invalid_argument("tv_histogram: empty samples");
  if (a.cols() != b.cols())
    throw std::invalid_argument("tv_histogram: dimension mismatch");
  const int dim = static_cast<int>(a.cols());
  if (static_cast<int>(grid.bins_per_axis.size()) != dim)
    throw std::invalid_argument("tv_histogram: bins_per_axis size mismatch");
  for (int bins : grid.bins_per_axis)
    if (bins < 1) throw std::invalid_argument("tv_histogram: bins must be >= 1");

  Vector lo(dim), hi(dim);
  const bool explicit_box = grid.lo.size() > 0 || grid.hi.size() > 0;
  if (explicit_box) {
    if (grid.lo.size() != dim || grid.hi.size() != dim)
      throw std::invalid_argument("tv_histogram: box dimension mismatch");
    lo = grid.lo;
    hi = grid.hi;
    for (int d = 0; d < dim; ++d)
      if (!(hi[d] > lo[d]))
        throw std::invalid_argument("tv_histogram: degenerate box");
    for (int d = 0; d < dim; ++d) {
      const double cover_lo = std::min(a.col(d).minCoeff(), b.col(d).minCoeff());
      const double cover_hi = std::max(a.col(d).maxCoeff(), b.col(d).maxCoeff());
      if (cover_lo < lo[d] || cover_hi > hi[d])
        throw std::invalid_argument("tv_histogram: box does not cover samples");
    }
  } else {
    for (int d = 0; d < dim; ++d) {
      lo[d] = std::min(a.col(d).minCoeff(), b.col(d).minCoeff());
      hi[d] = std::max(a.col(d).maxCoeff(), b.col(d).maxCoeff());
    }
  }

  std::size_t total_bins = 1;
  for (int bins : grid.bins_per_axis) {
    total_bins *= static_cast<std::size_t>(bins);
    if (total_bins > (1u << 22))
      throw std::invalid_argument("tv_histogram: grid too fine");
  }

  auto flat_index = [&](const auto& row) {
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int d = 0; d < dim; ++d) {
      const int bins = grid.bins_per_axis[static_cast<std::size_t>(d)];
      const double width = hi[d] - lo[d];
      int cell = 0;
      if (width > 0.0) {
        cell = static_cast<int>(std::floor((row[d] - lo[d]) / width * bins));
        cell = std::clamp(cell, 0, bins - 1);
      }
      idx += static_cast<std::size_t>(cell) * stride;
      stride *= static_cast<std::size_t>(bins);
    }
    return idx;
  };

  Vector pa = Vector::Zero(static_cast<Eigen::Index>(total_bins));
  Vector pb = Vector::Zero(static_cast<Eigen::Index>(total_bins));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    pa[static_cast<Eigen::Index>(flat_index(a.row(i)))] += 1.0 / a.rows();
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    pb[static_cast<Eigen::Index>(flat_index(b.row(i)))] += 1.0 / b.rows();

  IpmEstimate est;
  est.value = (pa - pb).cwiseAbs().sum();
  est.generator = Generator::TotalVariation;
  est.method = IpmMethod::histogram_tv;
  est.size_a = static_cast<std::size_t>(a.rows());
  est.size_b = static_cast<std::size_t>(b.rows());
  std::string bins_txt;
  for (std::size_t d = 0; d < grid.bins_per_axis.size(); ++d) {
    if (d) bins_txt += "x";
    bins_txt += std::to_string(grid.bins_per_axis[d]);
  }
  est.detail = "bins=" + bins_txt + (explicit_box ? " box=explicit" : " box=auto");
  return est;
}

double wasserstein1_1d_weighted(const std::vector<double>& xa,
                                const std::vector<double>& wa,
                                const std::vector<double>& xb,
                                const std::vector<double>& wb) {
  if (xa.empty() || xb.empty())
    throw std::invalid_argument("wasserstein1_1d_weighted: empty input");
  if (xa.size() != wa.size() || xb.size() != wb.size())
    throw std::invalid_argument("wasserstein1_1d_weighted: size mismatch");

  struct Event {
    double x;
    double da;
    double db;
  };
  std::vector<Event> events;
  events.reserve(xa.size() + xb.size());
  for (std::size_t i = 0; i < xa.size(); ++i) events.push_back({xa[i], wa[i], 0.0});
  for (std::size_t i = 0; i < xb.size(); ++i) events.push_back({xb[i], 0.0, wb[i]});
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& l, const Event& r) { return l.x < r.x; });

  double cost = 0.0;
  double cdfa = 0.0, cdfb = 0.0;
  for (std::size_t i = 0; i + 1 <= events.size(); ++i) {
    cdfa += events[i].da;
    cdfb += events[i].db;
    if (i + 1 < events.size())
      cost += std::abs(cdfa - cdfb) * (events[i + 1].x - events[i].x);
  }
  return cost;
}

}  // namespace alipm
