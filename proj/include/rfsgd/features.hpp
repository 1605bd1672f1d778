#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfsgd/kernel.hpp"

namespace rfsgd {

/// Random Fourier feature map for the Gaussian kernel.
///
/// Holds P = M/2 frequency vectors drawn from N(0, sigma^-2 I). The map sends
/// x to (cos(w_1.x), sin(w_1.x), ..., cos(w_P.x), sin(w_P.x)) / sqrt(P), so
/// every feature vector has unit Euclidean norm and the induced approximate
/// kernel is the frequency average of cos(w.(x - y)).
class FeatureSet {
 public:
  /// Draws feature_count/2 frequencies. feature_count must be even and
  /// positive; the kernel bandwidth must be positive.
  static FeatureSet sample(const GaussianKernel& kernel, int feature_count,
                           std::uint64_t seed);

  /// Wraps explicit frequencies (pair_count x dim, row major).
  static FeatureSet from_frequencies(int dim, std::vector<double> frequencies);

  int dim() const { return dim_; }
  int pair_count() const { return pair_count_; }
  int feature_count() const { return 2 * pair_count_; }

  /// Upper bound on ||phi(x)||; the paired construction makes this exactly 1.
  double feature_bound() const { return 1.0; }

  std::span<const double> frequencies() const { return frequencies_; }

  /// Writes the feature vector of x into out (length feature_count()).
  void feature_map(std::span<const double> x, std::span<double> out) const;
  std::vector<double> feature_map(std::span<const double> x) const;

  /// Monte-Carlo kernel value: the mean of cos(w.(x - y)) over frequencies.
  /// Evaluated through the coordinate difference, so it is exactly 1 at x = y
  /// and depends on x - y only.
  double kernel_approx(std::span<const double> x, std::span<const double> y) const;

  /// Text dump: first line "pair_count,dim", then one comma separated row per
  /// frequency with full double precision. load_csv restores bit-identical
  /// frequencies.
  void save_csv(const std::string& path) const;
  static FeatureSet load_csv(const std::string& path);

 private:
  FeatureSet(int dim, int pair_count, std::vector<double> frequencies);

  int dim_ = 0;
  int pair_count_ = 0;
  double inv_sqrt_p_ = 0.0;
  std::vector<double> frequencies_;  // pair_count x dim, row major
};

/// Feature vectors for a batch of points: out is n x feature_count, row major.
void feature_matrix(const FeatureSet& fs, std::span<const double> points, long n,
                    std::span<double> out);

/// Serial reference for feature_matrix; identical output.
void feature_matrix_serial(const FeatureSet& fs, std::span<const double> points,
                           long n, std::span<double> out);

}  // namespace rfsgd
