#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rfsgd/eval.hpp"
#include "rfsgd/rng.hpp"

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

using namespace rfsgd;

TEST_CASE("classification error counts sign disagreements") {
    const std::vector<double> scores{1.0, -1.0, 0.0, 2.0};
    const std::vector<std::int8_t> labels{1, -1, 1, -1};
    // score 0 predicts -1, so the third point is wrong; the fourth is wrong.
    CHECK(classification_error(scores, labels) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("zero score predicts the negative class") {
    const std::vector<double> z{0.0};
    CHECK(classification_error(z, std::vector<std::int8_t>{-1}) == 0.0);
    CHECK(classification_error(z, std::vector<std::int8_t>{1}) == 1.0);
}

TEST_CASE("single correct prediction gives zero error") {
    CHECK(classification_error(std::vector<double>{1.0}, std::vector<std::int8_t>{1}) == 0.0);
}

TEST_CASE("error inputs are validated") {
    const std::vector<double> scores{1.0};
    CHECK_THROWS_AS(classification_error({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(classification_error(scores, std::vector<std::int8_t>{1, -1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(expected_loss(SurrogateLoss{}, {}, {}), std::invalid_argument);
}

TEST_CASE("error is always a fraction") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> scores(257);
    std::vector<std::int8_t> labels(257);
    for (size_t i = 0; i < scores.size(); ++i) {
        scores[i] = u(rng);
        labels[i] = (rng() & 1) ? 1 : -1;
    }
    const double e = classification_error(scores, labels);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
}

TEST_CASE("sign-flip symmetry away from zero scores") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    std::vector<double> scores(100), flipped(100);
    std::vector<std::int8_t> labels(100);
    for (int i = 0; i < 100; ++i) {
        scores[i] = ((rng() & 1) ? 1.0 : -1.0) * u(rng);
        flipped[i] = -scores[i];
        labels[i] = (rng() & 1) ? 1 : -1;
    }
    CHECK(classification_error(flipped, labels) ==
          doctest::Approx(1.0 - classification_error(scores, labels)).epsilon(1e-15));
}

TEST_CASE("expected logistic loss of the zero score is log 2") {
    const std::vector<double> scores(100, 0.0);
    std::vector<std::int8_t> labels(100);
    for (int i = 0; i < 100; ++i) labels[i] = (i % 3 == 0) ? 1 : -1;
    CHECK(expected_loss(SurrogateLoss{LossKind::kLogistic}, scores, labels) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("hinge loss vanishes when every margin is at least one") {
    const std::vector<double> scores{1.0, 2.5, -1.0, -3.0};
    const std::vector<std::int8_t> labels{1, 1, -1, -1};
    CHECK(expected_loss(SurrogateLoss{LossKind::kHinge}, scores, labels) == 0.0);
}

TEST_CASE("test set draws are deterministic and labeled") {
    const SyntheticDistribution dist;
    const auto a = draw_test_set(dist, 300, 42);
    const auto b = draw_test_set(dist, 300, 42);
    REQUIRE(a.n == 300);
    CHECK(a.dim == 2);
    REQUIRE(a.x.size() == 600);
    REQUIRE(a.y.size() == 300);
    for (size_t i = 0; i < a.x.size(); ++i) CHECK(a.x[i] == b.x[i]);
    for (long i = 0; i < a.n; ++i) {
        CHECK(a.y[i] == b.y[i]);
        CHECK((a.y[i] == 1 || a.y[i] == -1));
        CHECK(dist.in_support(std::span<const double>(a.x.data() + 2 * i, 2)));
    }
}

TEST_CASE("bayes predictor error concentrates at the bayes risk") {
    const SyntheticDistribution dist;
    const long n = 100000;
    const auto test = draw_test_set(dist, n, 4242);
    const auto scores = score_test_set(test, [&](std::span<const double> x) {
        return static_cast<double>(dist.bayes_predict(x));
    });
    const double err = classification_error(scores, test.y);
    const double tol = 3.0 * std::sqrt(0.2 * 0.8 / static_cast<double>(n));
    CHECK(std::abs(err - 0.2) <= tol);
}

TEST_CASE("constant positive prediction errs on half the labels") {
    const SyntheticDistribution dist;
    const long n = 50000;
    const auto test = draw_test_set(dist, n, 17);
    const std::vector<double> ones(static_cast<size_t>(n), 1.0);
    const double err = classification_error(ones, test.y);
    CHECK(std::abs(err - 0.5) <= 3.0 * std::sqrt(0.25 / static_cast<double>(n)));
}

TEST_CASE("optimal logistic score attains the closed-form risk") {
    // Pointwise optimal logistic risk at mu = 0.8 (or 0.2 by symmetry):
    // 0.8 log(5/4) + 0.2 log 5, identical on every square.
    const SyntheticDistribution dist;
    const SurrogateLoss loss{LossKind::kLogistic};
    const long n = 20000;
    const auto test = draw_test_set(dist, n, 99);
    const auto scores = score_test_set(test, [&](std::span<const double> x) {
        return pointwise_optimal_score(loss, dist.conditional_prob(x));
    });
    const double want = 0.8 * std::log(5.0 / 4.0) + 0.2 * std::log(5.0);
    CHECK(want == doctest::Approx(0.5004024235381879).epsilon(1e-12));
    // Standard error from the per-point loss spread.
    double m = 0.0, s2 = 0.0;
    std::vector<double> pl(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) pl[static_cast<size_t>(i)] = loss_value(loss, scores[static_cast<size_t>(i)], test.y[static_cast<size_t>(i)]);
    for (double v : pl) m += v;
    m /= static_cast<double>(n);
    for (double v : pl) s2 += (v - m) * (v - m);
    s2 /= static_cast<double>(n - 1);
    const double se = std::sqrt(s2 / static_cast<double>(n));
    CHECK(std::abs(expected_loss(loss, scores, test.y) - want) <= 3.0 * se);
}

TEST_CASE("eval context carries the references for excess metrics") {
    const SyntheticDistribution dist;
    const SurrogateLoss loss{LossKind::kLogistic};
    const auto ev = make_eval_context(dist, loss, 20000, 4242);
    CHECK(ev.bayes_risk == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(std::abs(ev.reference_loss - 0.5004024235381879) <= 0.01);
    CHECK(ev.test.n == 20000);

    // Excess metrics subtract exactly those references.
    const std::vector<double> zeros(static_cast<size_t>(ev.test.n), 0.0);
    const auto mp = evaluate_scores(ev, 7, 123, zeros);
    CHECK(mp.iteration == 7);
    CHECK(mp.cumulative_updates == 123);
    CHECK(mp.excess_error == doctest::Approx(mp.error - ev.bayes_risk).epsilon(1e-15));
    CHECK(mp.excess_loss == doctest::Approx(mp.loss - ev.reference_loss).epsilon(1e-15));
    CHECK(mp.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("bayes scores give near-zero excess error") {
    const SyntheticDistribution dist;
    const auto ev = make_eval_context(dist, SurrogateLoss{}, 50000, 31);
    const auto scores = score_test_set(ev.test, [&](std::span<const double> x) {
        return static_cast<double>(dist.bayes_predict(x));
    });
    const auto mp = evaluate_scores(ev, 1, 1, scores);
    CHECK(std::abs(mp.excess_error) <= 4.0 * std::sqrt(0.2 * 0.8 / 50000.0));
}

TEST_CASE("aggregation closed forms for one and two runs") {
    RunTrace a{0, {MetricPoint{10, 100, 0.3, 0.6, 0.1, 0.2}}};
    const auto single = aggregate_runs(std::vector<RunTrace>{a});
    REQUIRE(single.size() == 1);
    CHECK(single[0].iteration == 10);
    CHECK(single[0].cumulative_updates == 100);
    CHECK(single[0].mean_excess_error == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(single[0].std_excess_error == 0.0);
    CHECK(single[0].mean_error == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(single[0].std_loss == 0.0);

    RunTrace b{1, {MetricPoint{10, 100, 0.5, 0.8, 0.3, 0.4}}};
    const auto pair = aggregate_runs(std::vector<RunTrace>{a, b});
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].mean_excess_error == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pair[0].std_excess_error == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pair[0].mean_loss == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(pair[0].std_loss == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("aggregation of many noisy runs recovers the population moments") {
    std::mt19937_64 rng(1007);
    std::normal_distribution<double> noise(0.4, 0.05);
    std::vector<RunTrace> traces;
    const int n_runs = 100;
    for (int r = 0; r < n_runs; ++r) {
        const double v = noise(rng);
        traces.push_back(RunTrace{r, {MetricPoint{5, 50, v, v, v, v}}});
    }
    const auto agg = aggregate_runs(traces);
    REQUIRE(agg.size() == 1);
    CHECK(std::abs(agg[0].mean_excess_error - 0.4) <= 3.0 * 0.05 / std::sqrt(100.0));
    CHECK(agg[0].std_excess_error > 0.05 * 0.7);
    CHECK(agg[0].std_excess_error < 0.05 * 1.3);
}

TEST_CASE("aggregation rejects mismatched checkpoint grids") {
    RunTrace a{0, {MetricPoint{10, 100, 0, 0, 0, 0}}};
    RunTrace b{1, {MetricPoint{20, 100, 0, 0, 0, 0}}};
    CHECK_THROWS_AS(aggregate_runs(std::vector<RunTrace>{a, b}), std::invalid_argument);
    RunTrace c{2, {MetricPoint{10, 100, 0, 0, 0, 0}, MetricPoint{20, 200, 0, 0, 0, 0}}};
    CHECK_THROWS_AS(aggregate_runs(std::vector<RunTrace>{a, c}), std::invalid_argument);
    CHECK_THROWS_AS(aggregate_runs({}), std::invalid_argument);
}

TEST_CASE("test set size is validated") {
    const SyntheticDistribution dist;
    CHECK_THROWS_AS(draw_test_set(dist, 0, 1), std::invalid_argument);
}
