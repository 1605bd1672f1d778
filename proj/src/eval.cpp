#include "rfsgd/eval.hpp"

#include <cmath>
#include <stdexcept>

#include "rfsgd/parallel.hpp"

namespace rfsgd {

double classification_error(std::span<const double> scores,
                            std::span<const std::int8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("classification_error: score and label counts differ");
  }
  if (scores.empty()) {
    throw std::invalid_argument("classification_error: empty test set");
  }
  long wrong = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int pred = scores[i] > 0.0 ? 1 : -1;
    if (pred != labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(scores.size());
}

double expected_loss(const SurrogateLoss& loss, std::span<const double> scores,
                     std::span<const std::int8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("expected_loss: score and label counts differ");
  }
  if (scores.empty()) {
    throw std::invalid_argument("expected_loss: empty test set");
  }
  const auto n = static_cast<std::ptrdiff_t>(scores.size());
  const double total = blocked_sum(n, [&](std::ptrdiff_t i) {
    return loss_value(loss, scores[static_cast<std::size_t>(i)],
                      labels[static_cast<std::size_t>(i)]);
  });
  return total / static_cast<double>(n);
}

TestSet draw_test_set(const SyntheticDistribution& dist, long n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("draw_test_set: n must be positive");
  TestSet test;
  test.dim = SyntheticDistribution::kDim;
  test.n = n;
  test.x.resize(static_cast<std::size_t>(n) * test.dim);
  test.y.resize(static_cast<std::size_t>(n));
  SyntheticDistribution::Stream stream(dist, seed);
  for (long i = 0; i < n; ++i) {
    const Sample s = stream.next();
    test.x[static_cast<std::size_t>(i) * 2] = s.x[0];
    test.x[static_cast<std::size_t>(i) * 2 + 1] = s.x[1];
    test.y[static_cast<std::size_t>(i)] = s.y;
  }
  return test;
}

EvalContext make_eval_context(const SyntheticDistribution& dist,
                              const SurrogateLoss& loss, long n_test,
                              std::uint64_t seed) {
  EvalContext ev;
  ev.test = draw_test_set(dist, n_test, seed);
  ev.loss = loss;
  ev.bayes_risk = dist.bayes_risk();
  const auto reference_scores = score_test_set(ev.test, [&](std::span<const double> x) {
    return pointwise_optimal_score(loss, dist.conditional_prob(x));
  });
  ev.reference_loss = expected_loss(loss, reference_scores, ev.test.y);
  return ev;
}

MetricPoint evaluate_scores(const EvalContext& ev, long iteration,
                            long long cumulative_updates,
                            std::span<const double> scores) {
  MetricPoint p;
  p.iteration = iteration;
  p.cumulative_updates = cumulative_updates;
  p.error = classification_error(scores, ev.test.y);
  p.loss = expected_loss(ev.loss, scores, ev.test.y);
  p.excess_error = p.error - ev.bayes_risk;
  p.excess_loss = p.loss - ev.reference_loss;
  return p;
}

namespace {

struct MeanStd {
  double mean;
  double std;
};

template <class Getter>
MeanStd mean_std(std::span<const RunTrace> traces, std::size_t point, Getter&& get) {
  const double n = static_cast<double>(traces.size());
  double mean = 0.0;
  for (const RunTrace& t : traces) mean += get(t.points[point]);
  mean /= n;
  if (traces.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const RunTrace& t : traces) {
    const double d = get(t.points[point]) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

std::vector<AggregatePoint> aggregate_runs(std::span<const RunTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate_runs: no traces");
  const std::size_t npoints = traces[0].points.size();
  for (const RunTrace& t : traces) {
    if (t.points.size() != npoints) {
      throw std::invalid_argument("aggregate_runs: traces record different checkpoint counts");
    }
    for (std::size_t k = 0; k < npoints; ++k) {
      if (t.points[k].iteration != traces[0].points[k].iteration ||
          t.points[k].cumulative_updates != traces[0].points[k].cumulative_updates) {
        throw std::invalid_argument("aggregate_runs: traces record different checkpoint grids");
      }
    }
  }
  std::vector<AggregatePoint> out(npoints);
  for (std::size_t k = 0; k < npoints; ++k) {
    AggregatePoint& a = out[k];
    a.iteration = traces[0].points[k].iteration;
    a.cumulative_updates = traces[0].points[k].cumulative_updates;
    const auto ee = mean_std(traces, k, [](const MetricPoint& p) { return p.excess_error; });
    const auto el = mean_std(traces, k, [](const MetricPoint& p) { return p.excess_loss; });
    const auto er = mean_std(traces, k, [](const MetricPoint& p) { return p.error; });
    const auto lo = mean_std(traces, k, [](const MetricPoint& p) { return p.loss; });
    a.mean_excess_error = ee.mean;
    a.std_excess_error = ee.std;
    a.mean_excess_loss = el.mean;
    a.std_excess_loss = el.std;
    a.mean_error = er.mean;
    a.std_error = er.std;
    a.mean_loss = lo.mean;
    a.std_loss = lo.std;
  }
  return out;
}

}  // namespace rfsgd
