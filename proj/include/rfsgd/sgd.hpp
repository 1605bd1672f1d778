#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfsgd/data.hpp"
#include "rfsgd/eval.hpp"
#include "rfsgd/features.hpp"
#include "rfsgd/loss.hpp"
#include "rfsgd/parallel.hpp"
#include "rfsgd/schedule.hpp"

namespace rfsgd {

struct SgdRunConfig {
  long T = 0;
  Schedule schedule;
  SurrogateLoss loss;
  int run_id = 0;
};

namespace detail {

inline void validate_checkpoints(std::span<const long> checkpoints, long horizon) {
  long prev = -1;
  for (long c : checkpoints) {
    if (c < 0) throw std::invalid_argument("checkpoints: negative iteration index");
    if (c > horizon) throw std::invalid_argument("checkpoints: index beyond the final iteration");
    if (c <= prev) throw std::invalid_argument("checkpoints: indices must be strictly increasing");
    prev = c;
  }
}

[[noreturn]] inline void throw_divergence(long t) {
  throw std::runtime_error("SGD update produced non-finite weights at iteration " +
                           std::to_string(t) +
                           "; the step-size schedule is unstable for this problem");
}

}  // namespace detail

/// Linear hypothesis in random Fourier feature space, trained by regularized
/// SGD with tail-weighted iterate averaging. Weights start at zero. The
/// averaged weights after t steps equal the weighted average of the first
/// t + 1 iterates for horizon t.
class RffHypothesis {
 public:
  explicit RffHypothesis(const FeatureSet& fs)
      : fs_(&fs),
        weights_(static_cast<std::size_t>(fs.feature_count()), 0.0),
        averaged_(static_cast<std::size_t>(fs.feature_count()), 0.0),
        phi_(static_cast<std::size_t>(fs.feature_count())) {}

  const FeatureSet& features() const { return *fs_; }
  long iterations() const { return iterations_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> averaged_weights() const { return averaged_; }

  /// Score of the averaged hypothesis.
  double predict(std::span<const double> x) const {
    return dot_features(averaged_, x);
  }

  /// Score of the current iterate.
  double predict_current(std::span<const double> x) const {
    return dot_features(weights_, x);
  }

  /// One stochastic step on example (x, y), then the averaging update.
  void step(const Schedule& s, const SurrogateLoss& loss,
            std::span<const double> x, int y) {
    const long t = iterations_ + 1;
    fs_->feature_map(x, phi_);
    const int m = fs_->feature_count();
    double score = 0.0;
    for (int i = 0; i < m; ++i) score += weights_[i] * phi_[i];
    const double d = loss_deriv(loss, score, y);
    const double eta = learning_rate(s, t);
    const double theta = averaging_theta(s, t);
    const double decay = 1.0 - eta * s.lambda;
    const double scale = -eta * d;
    double sumsq = 0.0;
    for (int i = 0; i < m; ++i) {
      const double w = decay * weights_[i] + scale * phi_[i];
      weights_[i] = w;
      averaged_[i] += theta * (w - averaged_[i]);
      sumsq += w * w;
    }
    if (!std::isfinite(sumsq)) detail::throw_divergence(t);
    iterations_ = t;
  }

 private:
  double dot_features(const std::vector<double>& w, std::span<const double> x) const {
    fs_->feature_map(x, phi_);
    double s = 0.0;
    const int m = fs_->feature_count();
    for (int i = 0; i < m; ++i) s += w[i] * phi_[i];
    return s;
  }

  const FeatureSet* fs_;
  long iterations_ = 0;
  std::vector<double> weights_;
  std::vector<double> averaged_;
  mutable std::vector<double> phi_;
};

struct RffRunResult {
  RunTrace trace;
  RffHypothesis hypothesis;
};

/// Runs averaged SGD in feature space for cfg.T iterations, recording the
/// averaged hypothesis at each checkpoint. Checkpoints must be strictly
/// increasing within [0, T]; checkpoint 0 records the zero hypothesis. The
/// cumulative update counter advances by feature_count per iteration.
RffRunResult run_rff_sgd(const SgdRunConfig& cfg, const FeatureSet& fs,
                         SyntheticDistribution::Stream& data,
                         std::span<const long> checkpoints, const EvalContext& ev);

/// Kernel hypothesis kept as a growing support set with one coefficient per
/// visited point, for both the current and the averaged iterate.
struct KernelHypothesis {
  int dim = 0;
  long iterations = 0;
  std::vector<double> support;    // iterations x dim, row major
  std::vector<double> coeff;      // current iterate
  std::vector<double> coeff_avg;  // averaged iterate

  long support_size() const { return iterations; }

  template <class KernelFn>
  double predict(KernelFn&& kernel, std::span<const double> x) const {
    return expand(coeff_avg, kernel, x);
  }

  template <class KernelFn>
  double predict_current(KernelFn&& kernel, std::span<const double> x) const {
    return expand(coeff, kernel, x);
  }

 private:
  template <class KernelFn>
  double expand(const std::vector<double>& c, KernelFn&& kernel,
                std::span<const double> x) const {
    double s = 0.0;
    for (long i = 0; i < iterations; ++i) {
      s += c[static_cast<std::size_t>(i)] *
           kernel(std::span<const double>(support.data() + i * dim,
                                          static_cast<std::size_t>(dim)),
                  x);
    }
    return s;
  }
};

struct KernelRunResult {
  RunTrace trace;
  KernelHypothesis hypothesis;
};

/// Averaged SGD directly in the reproducing space of `kernel`, the exact
/// analogue of run_rff_sgd: identical schedule, identical sample consumption,
/// with the hypothesis expanded over the visited points instead of a weight
/// vector. Each iteration touches every stored coefficient once, so the
/// cumulative update counter advances by t at iteration t.
///
/// Test-set scores of the current and averaged iterates are maintained by the
/// same recursions that update the coefficients, which keeps checkpoint
/// evaluation linear in the test set.
template <class KernelFn>
KernelRunResult run_kernel_sgd_with(const SgdRunConfig& cfg, KernelFn&& kernel,
                                    SyntheticDistribution::Stream& data,
                                    std::span<const long> checkpoints,
                                    const EvalContext& ev) {
  detail::validate_checkpoints(checkpoints, cfg.T);
  KernelHypothesis h;
  h.dim = SyntheticDistribution::kDim;
  const long n_test = ev.test.n;
  std::vector<double> pred_cur(static_cast<std::size_t>(n_test), 0.0);
  std::vector<double> pred_avg(static_cast<std::size_t>(n_test), 0.0);

  KernelRunResult result;
  result.trace.run_id = cfg.run_id;
  long long updates = 0;
  std::size_t next_ck = 0;
  auto record = [&](long t) {
    result.trace.points.push_back(evaluate_scores(ev, t, updates, pred_avg));
  };
  if (next_ck < checkpoints.size() && checkpoints[next_ck] == 0) {
    record(0);
    ++next_ck;
  }

  for (long t = 1; t <= cfg.T; ++t) {
    const Sample s = data.next();
    const std::span<const double> x(s.x.data(), s.x.size());
    const double score = h.predict_current(kernel, x);
    if (!std::isfinite(score)) detail::throw_divergence(t);
    const double d = loss_deriv(cfg.loss, score, s.y);
    const double eta = learning_rate(cfg.schedule, t);
    const double theta = averaging_theta(cfg.schedule, t);
    const double decay = 1.0 - eta * cfg.schedule.lambda;
    const double c_new = -eta * d;

    for (double& c : h.coeff) c *= decay;
    h.coeff.push_back(c_new);
    for (std::size_t i = 0; i + 1 < h.coeff.size(); ++i) {
      h.coeff_avg[i] += theta * (h.coeff[i] - h.coeff_avg[i]);
    }
    h.coeff_avg.push_back(theta * c_new);
    h.support.insert(h.support.end(), x.begin(), x.end());
    h.iterations = t;
    updates += t;

    parallel_for(n_test, [&](std::ptrdiff_t j) {
      const std::span<const double> tx(ev.test.x.data() + j * h.dim,
                                       static_cast<std::size_t>(h.dim));
      const double k = kernel(x, tx);
      const double cur = decay * pred_cur[static_cast<std::size_t>(j)] + c_new * k;
      pred_cur[static_cast<std::size_t>(j)] = cur;
      pred_avg[static_cast<std::size_t>(j)] +=
          theta * (cur - pred_avg[static_cast<std::size_t>(j)]);
    });

    if (next_ck < checkpoints.size() && checkpoints[next_ck] == t) {
      record(t);
      ++next_ck;
    }
  }
  result.hypothesis = std::move(h);
  return result;
}

/// Full-kernel baseline with the exact Gaussian kernel.
KernelRunResult run_kernel_sgd(const SgdRunConfig& cfg, const GaussianKernel& kernel,
                               SyntheticDistribution::Stream& data,
                               std::span<const long> checkpoints,
                               const EvalContext& ev);

}  // namespace rfsgd
