#pragma once

#include "alipm/core.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace alipm {

enum class Generator { Kantorovich, TotalVariation };
enum class IpmMethod { closed_form_1d, exact_transport, histogram_tv, discrete_tv };

std::string to_string(Generator g);
std::string to_string(IpmMethod m);
Generator parse_generator(const std::string& s);

/// Scalar IPM estimate with method metadata. The generator/method pairing is
/// checked at construction: closed_form_1d and exact_transport belong to
/// Kantorovich, histogram_tv and discrete_tv to TotalVariation.
struct IpmEstimate {
  double value = 0.0;
  Generator generator = Generator::Kantorovich;
  IpmMethod method = IpmMethod::exact_transport;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::string detail;  // e.g. histogram grid description
};

/// Wasserstein-1 between two equal-size empirical measures on R: mean
/// absolute difference of the sorted samples.
IpmEstimate kantorovich_1d(std::vector<double> a, std::vector<double> b);

/// Wasserstein-1 between weighted point sets in R^n under the Euclidean
/// ground metric, solved exactly by successive-shortest-path min-cost flow.
/// Weights must each sum to 1 within 1e-12; points_a/points_b hold one point
/// per row. Total point count is capped (default 512).
IpmEstimate kantorovich_exact(const Matrix& points_a, const Vector& weights_a,
                              const Matrix& points_b, const Vector& weights_b,
                              std::size_t cap = 512);

/// Equal-weight convenience overload.
IpmEstimate kantorovich_exact(const Matrix& points_a, const Matrix& points_b,
                              std::size_t cap = 512);

/// IPM over {||f||_inf <= 1} between two discrete distributions on a shared
/// support: sum_i |p_i - q_i|, in [0,2].
IpmEstimate tv_discrete(const Vector& p, const Vector& q);

/// Axis-aligned histogram grid. When lo/hi are empty the bounding box of both
/// samples is used; an explicit box must have positive width on every axis.
struct GridSpec {
  std::vector<int> bins_per_axis;
  Vector lo;
  Vector hi;

  static GridSpec uniform(int dim, int bins);
};

/// Histogram surrogate for the total-variation IPM on continuous samples:
/// bins both samples on a shared grid and returns tv_discrete of the two
/// histograms. An estimator, not a metric on the underlying densities.
IpmEstimate tv_histogram(const Matrix& a, const Matrix& b, const GridSpec& grid);

/// Exact W1 between two weighted empirical measures on R, by sweeping the
/// merged support (quantile form). Shares no code with kantorovich_exact.
double wasserstein1_1d_weighted(const std::vector<double>& xa,
                                const std::vector<double>& wa,
                                const std::vector<double>& xb,
                                const std::vector<double>& wb);

}  // namespace alipm
