#pragma once

#include <cstdint>
#include <span>

namespace rfsgd {

/// Gaussian kernel k(x, y) = exp(-||x - y||^2 / (2 sigma^2)) on R^dim.
struct GaussianKernel {
  double sigma;
  int dim;

  GaussianKernel(double sigma, int dim);
};

double kernel_exact(const GaussianKernel& kernel, std::span<const double> x,
                    std::span<const double> y);

/// Bandwidth from the median heuristic: the median pairwise Euclidean
/// distance over a pilot sample. `points` is n x dim, row major.
double median_heuristic_sigma(std::span<const double> points, int dim);

}  // namespace rfsgd
