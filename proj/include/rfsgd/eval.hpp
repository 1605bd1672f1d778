#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfsgd/data.hpp"
#include "rfsgd/loss.hpp"

namespace rfsgd {

/// Fraction of test points whose predicted sign disagrees with the label.
/// A score of exactly zero predicts -1.
double classification_error(std::span<const double> scores,
                            std::span<const std::int8_t> labels);

/// Mean surrogate loss of the scores against the labels.
double expected_loss(const SurrogateLoss& loss, std::span<const double> scores,
                     std::span<const std::int8_t> labels);

struct TestSet {
  int dim = 0;
  long n = 0;
  std::vector<double> x;        // n x dim, row major
  std::vector<std::int8_t> y;   // n labels
};

TestSet draw_test_set(const SyntheticDistribution& dist, long n, std::uint64_t seed);

/// Evaluates a score function g over the test set. g receives one point.
template <class Fn>
std::vector<double> score_test_set(const TestSet& test, Fn&& g) {
  std::vector<double> scores(static_cast<std::size_t>(test.n));
  for (long i = 0; i < test.n; ++i) {
    scores[static_cast<std::size_t>(i)] = g(
        std::span<const double>(test.x.data() + i * test.dim, static_cast<std::size_t>(test.dim)));
  }
  return scores;
}

/// Shared evaluation state for an experiment: one test set plus the reference
/// values that excess metrics subtract. reference_loss is the empirical loss
/// of the pointwise optimal score on the same test set.
struct EvalContext {
  TestSet test;
  SurrogateLoss loss;
  double bayes_risk = 0.0;
  double reference_loss = 0.0;
};

EvalContext make_eval_context(const SyntheticDistribution& dist,
                              const SurrogateLoss& loss, long n_test,
                              std::uint64_t seed);

/// One recorded checkpoint of a run.
struct MetricPoint {
  long iteration = 0;
  long long cumulative_updates = 0;
  double error = 0.0;
  double loss = 0.0;
  double excess_error = 0.0;
  double excess_loss = 0.0;
};

struct RunTrace {
  int run_id = 0;
  std::vector<MetricPoint> points;
};

MetricPoint evaluate_scores(const EvalContext& ev, long iteration,
                            long long cumulative_updates,
                            std::span<const double> scores);

/// Mean and sample standard deviation (n - 1 convention, zero for one run)
/// of the per-run metrics at one checkpoint.
struct AggregatePoint {
  long iteration = 0;
  long long cumulative_updates = 0;
  double mean_excess_error = 0.0;
  double std_excess_error = 0.0;
  double mean_excess_loss = 0.0;
  double std_excess_loss = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double mean_loss = 0.0;
  double std_loss = 0.0;
};

/// Aggregates runs checkpoint by checkpoint. All traces must share the same
/// checkpoint grid; a mismatch throws.
std::vector<AggregatePoint> aggregate_runs(std::span<const RunTrace> traces);

}  // namespace rfsgd
