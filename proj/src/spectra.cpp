#include "rfsgd/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "rfsgd/parallel.hpp"
#include "rfsgd/rng.hpp"

namespace rfsgd {

namespace {

template <class Loop, class KernelAt>
std::vector<double> gram_impl(Loop&& loop, KernelAt&& k_at,
                              std::span<const double> points, long n, int dim) {
  if (n <= 0) throw std::invalid_argument("gram: need at least one point");
  if (points.size() != static_cast<std::size_t>(n) * dim) {
    throw std::invalid_argument("gram: point array has wrong length");
  }
  std::vector<double> g(static_cast<std::size_t>(n) * n);
  loop(n, [&](std::ptrdiff_t i) {
    const std::span<const double> xi(points.data() + i * dim,
                                     static_cast<std::size_t>(dim));
    for (long j = i; j < n; ++j) {
      const std::span<const double> xj(points.data() + j * dim,
                                       static_cast<std::size_t>(dim));
      const double v = k_at(xi, xj);
      g[static_cast<std::size_t>(i) * n + j] = v;
      g[static_cast<std::size_t>(j) * n + i] = v;
    }
  });
  return g;
}

}  // namespace

std::vector<double> gram_exact(const GaussianKernel& kernel,
                               std::span<const double> points, long n) {
  return gram_impl([](std::ptrdiff_t m, auto&& body) { parallel_for(m, body); },
                   [&](auto a, auto b) { return kernel_exact(kernel, a, b); },
                   points, n, kernel.dim);
}

std::vector<double> gram_exact_serial(const GaussianKernel& kernel,
                                      std::span<const double> points, long n) {
  return gram_impl([](std::ptrdiff_t m, auto&& body) { serial_for(m, body); },
                   [&](auto a, auto b) { return kernel_exact(kernel, a, b); },
                   points, n, kernel.dim);
}

std::vector<double> gram_approx(const FeatureSet& fs,
                                std::span<const double> points, long n) {
  return gram_impl([](std::ptrdiff_t m, auto&& body) { parallel_for(m, body); },
                   [&](auto a, auto b) { return fs.kernel_approx(a, b); },
                   points, n, fs.dim());
}

std::vector<double> gram_approx_serial(const FeatureSet& fs,
                                       std::span<const double> points, long n) {
  return gram_impl([](std::ptrdiff_t m, auto&& body) { serial_for(m, body); },
                   [&](auto a, auto b) { return fs.kernel_approx(a, b); },
                   points, n, fs.dim());
}

SpectralNormResult spectral_norm(std::span<const double> a, long n, double tol,
                                 int max_iterations, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("spectral_norm: matrix order must be positive");
  if (a.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("spectral_norm: matrix array has wrong length");
  }
  std::vector<double> v(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  auto rng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& c : v) c = normal(rng);
  double vnorm = std::sqrt(blocked_sum(n, [&](std::ptrdiff_t i) {
    return v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
  }));
  for (double& c : v) c /= vnorm;

  SpectralNormResult result;
  double prev = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    parallel_for(n, [&](std::ptrdiff_t i) {
      const double* row = a.data() + static_cast<std::size_t>(i) * n;
      double s = 0.0;
      for (long j = 0; j < n; ++j) s += row[j] * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    });
    const double rho = blocked_sum(n, [&](std::ptrdiff_t i) {
      return v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    });
    const double wnorm = std::sqrt(blocked_sum(n, [&](std::ptrdiff_t i) {
      return w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    }));
    result.iterations = it;
    result.value = std::abs(rho);
    if (wnorm == 0.0) {
      result.value = 0.0;
      result.converged = true;
      return result;
    }
    if (it > 1 && std::abs(result.value - prev) <= tol * result.value + 1e-300) {
      result.converged = true;
      return result;
    }
    prev = result.value;
    for (long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / wnorm;
  }
  return result;
}

NormDecayResult norm_decay_study(const GaussianKernel& kernel,
                                 std::span<const double> points, long n,
                                 const NormDecayConfig& cfg) {
  if (n < 2) throw std::invalid_argument("norm_decay_study: need at least two points");
  if (cfg.replicates < 5) {
    throw std::invalid_argument("norm_decay_study: need at least five replicates per feature count");
  }
  if (cfg.feature_counts.empty()) {
    throw std::invalid_argument("norm_decay_study: empty feature-count list");
  }
  int prev_m = 0;
  for (int m : cfg.feature_counts) {
    if (m <= 0 || m % 2 != 0) {
      throw std::invalid_argument("norm_decay_study: feature counts must be even and positive");
    }
    if (m <= prev_m) {
      throw std::invalid_argument("norm_decay_study: feature counts must be strictly increasing");
    }
    prev_m = m;
  }
  if (!(cfg.bound_delta > 0.0 && cfg.bound_delta < 1.0)) {
    throw std::invalid_argument("norm_decay_study: bound delta must lie in (0, 1)");
  }

  NormDecayResult result;
  const std::vector<double> gram = gram_exact(kernel, points, n);
  const SpectralNormResult exact = spectral_norm(gram, n);
  result.exact_norm = exact.value / static_cast<double>(n);
  result.all_converged = exact.converged;
  const double beta_arg = 2.0 / (result.exact_norm * cfg.bound_delta);
  if (!(beta_arg > 1.0)) {
    throw std::invalid_argument("norm_decay_study: bound delta too large for this operator norm");
  }
  const double beta = std::log(beta_arg);

  const std::size_t n_counts = cfg.feature_counts.size();
  const std::size_t total = n_counts * static_cast<std::size_t>(cfg.replicates);
  result.rows.resize(total);
  std::vector<std::uint8_t> converged(total, 0);
  parallel_for_dynamic(static_cast<std::ptrdiff_t>(total), [&](std::ptrdiff_t idx) {
    const int m = cfg.feature_counts[static_cast<std::size_t>(idx) / cfg.replicates];
    const int rep = static_cast<int>(static_cast<std::size_t>(idx) % cfg.replicates);
    const FeatureSet fs = FeatureSet::sample(
        kernel, m,
        derive_seed(cfg.seed, RngStream::kNormDecayFeatures,
                    static_cast<std::uint64_t>(idx)));
    std::vector<double> diff = gram_approx(fs, points, n);
    for (std::size_t e = 0; e < diff.size(); ++e) diff[e] = gram[e] - diff[e];
    const SpectralNormResult sn = spectral_norm(
        diff, n, 1e-8, 10000,
        derive_seed(cfg.seed, RngStream::kPowerIteration,
                    static_cast<std::uint64_t>(idx)));
    double frob = 0.0;
    for (double d : diff) frob += d * d;
    NormDecayRow& row = result.rows[static_cast<std::size_t>(idx)];
    row.feature_count = m;
    row.replicate = rep;
    row.normalized_norm = sn.value / static_cast<double>(n);
    row.normalized_frobenius = std::sqrt(frob) / static_cast<double>(n);
    row.bound_value = 2.0 * beta / (3.0 * m) + std::sqrt(2.0 * beta / m);
    converged[static_cast<std::size_t>(idx)] = sn.converged ? 1 : 0;
  });
  for (std::uint8_t c : converged) {
    if (!c) result.all_converged = false;
  }
  for (const NormDecayRow& row : result.rows) {
    if (row.normalized_norm > row.bound_value) ++result.bound_violations;
  }

  result.summary.resize(n_counts);
  for (std::size_t c = 0; c < n_counts; ++c) {
    double mean = 0.0;
    for (int r = 0; r < cfg.replicates; ++r) {
      mean += result.rows[c * cfg.replicates + r].normalized_norm;
    }
    mean /= cfg.replicates;
    double ss = 0.0;
    for (int r = 0; r < cfg.replicates; ++r) {
      const double d = result.rows[c * cfg.replicates + r].normalized_norm - mean;
      ss += d * d;
    }
    result.summary[c].feature_count = cfg.feature_counts[c];
    result.summary[c].mean = mean;
    result.summary[c].stddev =
        cfg.replicates > 1 ? std::sqrt(ss / (cfg.replicates - 1)) : 0.0;
  }

  if (n_counts >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const NormDecaySummary& s : result.summary) {
      const double lx = std::log(static_cast<double>(s.feature_count));
      const double ly = std::log(s.mean);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double k = static_cast<double>(n_counts);
    result.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return result;
}

}  // namespace rfsgd
