#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfsgd/features.hpp"
#include "rfsgd/kernel.hpp"

namespace rfsgd {

/// Exact Gram matrix K_ij = k(x_i, x_j), n x n row major. Symmetric by
/// construction: the upper triangle is computed and mirrored.
std::vector<double> gram_exact(const GaussianKernel& kernel,
                               std::span<const double> points, long n);
std::vector<double> gram_exact_serial(const GaussianKernel& kernel,
                                      std::span<const double> points, long n);

/// Approximate Gram matrix from a feature set, via the frequency-averaged
/// kernel. Unit diagonal, exactly.
std::vector<double> gram_approx(const FeatureSet& fs,
                                std::span<const double> points, long n);
std::vector<double> gram_approx_serial(const FeatureSet& fs,
                                       std::span<const double> points, long n);

struct SpectralNormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest singular value of a symmetric matrix by power iteration with a
/// seeded random start. Convergence is declared when the Rayleigh quotient
/// stabilizes to the relative tolerance; hitting the iteration cap instead
/// leaves `converged` false and returns the last estimate.
SpectralNormResult spectral_norm(std::span<const double> a, long n,
                                 double tol = 1e-8, int max_iterations = 10000,
                                 std::uint64_t seed = 0x9E3779B9u);

struct NormDecayConfig {
  std::vector<int> feature_counts;  // strictly increasing, even entries
  int replicates = 10;
  double bound_delta = 0.05;
  std::uint64_t seed = 0;
};

struct NormDecayRow {
  int feature_count = 0;
  int replicate = 0;
  double normalized_norm = 0.0;       // ||K - K_M||_op / n
  double normalized_frobenius = 0.0;  // ||K - K_M||_F / n
  double bound_value = 0.0;           // concentration bound at bound_delta
};

struct NormDecaySummary {
  int feature_count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct NormDecayResult {
  std::vector<NormDecayRow> rows;
  std::vector<NormDecaySummary> summary;
  double slope = 0.0;          // OLS slope of log mean norm against log M
  double exact_norm = 0.0;     // ||K||_op / n, the plug-in operator norm
  int bound_violations = 0;
  bool all_converged = true;
};

/// Draws `replicates` independent feature sets per feature count, measures
/// the normalized operator-norm gap between the exact and approximate Gram
/// matrices on the given points, and fits the log-log decay slope. Also
/// evaluates a Bernstein-style concentration bound (failure probability
/// bound_delta) for each feature count and counts violations.
NormDecayResult norm_decay_study(const GaussianKernel& kernel,
                                 std::span<const double> points, long n,
                                 const NormDecayConfig& cfg);

}  // namespace rfsgd
