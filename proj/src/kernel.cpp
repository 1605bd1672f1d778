#include "rfsgd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rfsgd {

GaussianKernel::GaussianKernel(double sigma_in, int dim_in)
    : sigma(sigma_in), dim(dim_in) {
  if (!(sigma > 0.0)) throw std::invalid_argument("GaussianKernel: sigma must be positive");
  if (dim <= 0) throw std::invalid_argument("GaussianKernel: dim must be positive");
}

double kernel_exact(const GaussianKernel& kernel, std::span<const double> x,
                    std::span<const double> y) {
  if (x.size() != static_cast<std::size_t>(kernel.dim) ||
      y.size() != static_cast<std::size_t>(kernel.dim)) {
    throw std::invalid_argument("kernel_exact: point dimension mismatch");
  }
  double sq = 0.0;
  for (int j = 0; j < kernel.dim; ++j) {
    const double d = x[j] - y[j];
    sq += d * d;
  }
  return std::exp(-sq / (2.0 * kernel.sigma * kernel.sigma));
}

double median_heuristic_sigma(std::span<const double> points, int dim) {
  if (dim <= 0) throw std::invalid_argument("median_heuristic_sigma: dim must be positive");
  if (points.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("median_heuristic_sigma: point array not a multiple of dim");
  }
  const std::size_t n = points.size() / static_cast<std::size_t>(dim);
  if (n < 2) throw std::invalid_argument("median_heuristic_sigma: need at least two points");

  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double d = points[i * dim + c] - points[j * dim + c];
        sq += d * d;
      }
      dists.push_back(std::sqrt(sq));
    }
  }
  const std::size_t m = dists.size();
  const std::size_t hi = m / 2;
  std::nth_element(dists.begin(), dists.begin() + hi, dists.end());
  double med = dists[hi];
  if (m % 2 == 0) {
    std::nth_element(dists.begin(), dists.begin() + (hi - 1), dists.begin() + hi);
    med = 0.5 * (med + dists[hi - 1]);
  }
  if (!(med > 0.0)) {
    throw std::runtime_error("median_heuristic_sigma: degenerate pilot sample, median distance is zero");
  }
  return med;
}

}  // namespace rfsgd
