#include "rfsgd/sgd.hpp"

namespace rfsgd {

namespace {

// Cap on cached test-feature matrices, in doubles (256 MB).
constexpr std::size_t kScoreCacheEntries = 32u * 1024u * 1024u;
constexpr long kScoreChunk = 4096;

// Test-set scores of a weight vector. Caches the feature matrix of the test
// set when it fits, otherwise recomputes features chunk by chunk.
class RffScorer {
 public:
  RffScorer(const FeatureSet& fs, const TestSet& test) : fs_(fs), test_(test) {
    const std::size_t entries =
        static_cast<std::size_t>(test.n) * static_cast<std::size_t>(fs.feature_count());
    if (entries <= kScoreCacheEntries) {
      cache_.resize(entries);
      feature_matrix(fs_, test_.x, test_.n, cache_);
    }
  }

  void scores(std::span<const double> w, std::span<double> out) const {
    const int m = fs_.feature_count();
    if (!cache_.empty()) {
      parallel_for(test_.n, [&](std::ptrdiff_t i) {
        out[static_cast<std::size_t>(i)] =
            dot(cache_.data() + static_cast<std::size_t>(i) * m, w.data(), m);
      });
      return;
    }
    std::vector<double> chunk(static_cast<std::size_t>(kScoreChunk) * m);
    for (long lo = 0; lo < test_.n; lo += kScoreChunk) {
      const long rows = std::min(kScoreChunk, test_.n - lo);
      const std::span<const double> pts(test_.x.data() +
                                            static_cast<std::size_t>(lo) * test_.dim,
                                        static_cast<std::size_t>(rows) * test_.dim);
      const std::span<double> mat(chunk.data(), static_cast<std::size_t>(rows) * m);
      feature_matrix(fs_, pts, rows, mat);
      parallel_for(rows, [&](std::ptrdiff_t i) {
        out[static_cast<std::size_t>(lo + i)] =
            dot(mat.data() + static_cast<std::size_t>(i) * m, w.data(), m);
      });
    }
  }

 private:
  static double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }

  const FeatureSet& fs_;
  const TestSet& test_;
  std::vector<double> cache_;
};

}  // namespace

RffRunResult run_rff_sgd(const SgdRunConfig& cfg, const FeatureSet& fs,
                         SyntheticDistribution::Stream& data,
                         std::span<const long> checkpoints, const EvalContext& ev) {
  detail::validate_checkpoints(checkpoints, cfg.T);
  RffRunResult result{RunTrace{cfg.run_id, {}}, RffHypothesis(fs)};
  RffHypothesis& h = result.hypothesis;
  const RffScorer scorer(fs, ev.test);
  std::vector<double> scores(static_cast<std::size_t>(ev.test.n));
  const long long m = fs.feature_count();
  long long updates = 0;
  std::size_t next_ck = 0;
  auto record = [&](long t) {
    scorer.scores(h.averaged_weights(), scores);
    result.trace.points.push_back(evaluate_scores(ev, t, updates, scores));
  };
  if (next_ck < checkpoints.size() && checkpoints[next_ck] == 0) {
    record(0);
    ++next_ck;
  }
  for (long t = 1; t <= cfg.T; ++t) {
    const Sample s = data.next();
    h.step(cfg.schedule, cfg.loss, std::span<const double>(s.x.data(), s.x.size()), s.y);
    updates += m;
    if (next_ck < checkpoints.size() && checkpoints[next_ck] == t) {
      record(t);
      ++next_ck;
    }
  }
  return result;
}

KernelRunResult run_kernel_sgd(const SgdRunConfig& cfg, const GaussianKernel& kernel,
                               SyntheticDistribution::Stream& data,
                               std::span<const long> checkpoints,
                               const EvalContext& ev) {
  return run_kernel_sgd_with(
      cfg,
      [&kernel](std::span<const double> a, std::span<const double> b) {
        return kernel_exact(kernel, a, b);
      },
      data, checkpoints, ev);
}

}  // namespace rfsgd
