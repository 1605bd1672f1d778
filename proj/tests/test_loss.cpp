#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rfsgd/loss.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace rfsgd;

namespace {

const SurrogateLoss kLogistic{LossKind::kLogistic};
const SurrogateLoss kHinge{LossKind::kHinge};

}  // namespace

TEST_CASE("logistic loss closed-form values") {
    CHECK(loss_value(kLogistic, 0.0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(loss_value(kLogistic, 0.0, -1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(loss_value(kLogistic, 1.0, -1) ==
          doctest::Approx(std::log1p(std::exp(1.0))).epsilon(1e-15));
    CHECK(loss_value(kLogistic, 1.0, 1) ==
          doctest::Approx(std::log1p(std::exp(-1.0))).epsilon(1e-15));
}

TEST_CASE("hinge loss closed-form values") {
    CHECK(loss_value(kHinge, 2.0, 1) == 0.0);
    CHECK(loss_value(kHinge, 0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(loss_value(kHinge, 0.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(loss_value(kHinge, -1.0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(loss_value(kHinge, -2.0, -1) == 0.0);
}

TEST_CASE("logistic loss is finite and asymptotically linear at extreme margins") {
    const double big = 1000.0;
    CHECK(std::isfinite(loss_value(kLogistic, big, -1)));
    CHECK(loss_value(kLogistic, big, -1) == doctest::Approx(big).epsilon(1e-12));
    CHECK(std::isfinite(loss_value(kLogistic, -big, 1)));
    CHECK(loss_value(kLogistic, -big, 1) == doctest::Approx(big).epsilon(1e-12));
    CHECK(loss_value(kLogistic, big, 1) >= 0.0);
    CHECK(loss_value(kLogistic, big, 1) < 1e-12);
}

TEST_CASE("logistic derivative closed-form values and saturation") {
    CHECK(loss_deriv(kLogistic, 0.0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(loss_deriv(kLogistic, 0.0, -1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(loss_deriv(kLogistic, 20.0, 1)) < 1e-6);
    CHECK(std::abs(loss_deriv(kLogistic, -20.0, -1)) < 1e-6);
    // Deep saturation on both sides stays finite.
    CHECK(std::abs(loss_deriv(kLogistic, 100.0, 1)) < 1e-40);
    CHECK(loss_deriv(kLogistic, -100.0, 1) == -1.0);
}

TEST_CASE("hinge subgradient convention") {
    CHECK(loss_deriv(kHinge, 0.5, 1) == -1.0);
    CHECK(loss_deriv(kHinge, 2.0, 1) == 0.0);
    CHECK(loss_deriv(kHinge, 1.0, 1) == 0.0);  // zero at the kink by convention
    CHECK(loss_deriv(kHinge, -0.5, -1) == 1.0);
    CHECK(loss_deriv(kHinge, -1.0, -1) == 0.0);
}

TEST_CASE("logistic derivative matches a central finite difference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> zeta(-4.0, 4.0);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const double z = zeta(rng);
        const int y = (rng() & 1) ? 1 : -1;
        const double fd =
            (loss_value(kLogistic, z + h, y) - loss_value(kLogistic, z - h, y)) / (2.0 * h);
        const double an = loss_deriv(kLogistic, z, y);
        CAPTURE(z);
        CAPTURE(y);
        CHECK(std::abs(an - fd) <= 1e-6 * (std::abs(fd) + 1e-3));
    }
}

TEST_CASE("hinge derivative matches finite differences away from the kink") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> zeta(-4.0, 4.0);
    const double h = 1e-5;
    int checked = 0;
    while (checked < 100) {
        const double z = zeta(rng);
        const int y = (rng() & 1) ? 1 : -1;
        if (std::abs(z * y - 1.0) < 1e-3) continue;  // subgradient ambiguity zone
        const double fd =
            (loss_value(kHinge, z + h, y) - loss_value(kHinge, z - h, y)) / (2.0 * h);
        CHECK(loss_deriv(kHinge, z, y) == doctest::Approx(fd).epsilon(1e-9));
        ++checked;
    }
}

TEST_CASE("both losses are 1-Lipschitz with bounded derivative") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> zeta(-50.0, 50.0);
    for (const auto& loss : {kLogistic, kHinge}) {
        for (int i = 0; i < 500; ++i) {
            const double a = zeta(rng), b = zeta(rng);
            const int y = (rng() & 1) ? 1 : -1;
            CHECK(std::abs(loss_value(loss, a, y) - loss_value(loss, b, y)) <=
                  std::abs(a - b) + 1e-12);
            CHECK(std::abs(loss_deriv(loss, a, y)) <= 1.0);
        }
    }
}

TEST_CASE("both losses satisfy the midpoint convexity inequality") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> zeta(-20.0, 20.0);
    for (const auto& loss : {kLogistic, kHinge}) {
        for (int i = 0; i < 500; ++i) {
            const double a = zeta(rng), b = zeta(rng);
            const int y = (rng() & 1) ? 1 : -1;
            const double mid = loss_value(loss, 0.5 * (a + b), y);
            const double avg = 0.5 * (loss_value(loss, a, y) + loss_value(loss, b, y));
            CHECK(mid <= avg + 1e-12);
        }
    }
}

TEST_CASE("labels outside the binary alphabet are rejected") {
    CHECK_THROWS_AS(loss_value(kLogistic, 0.3, 0), std::invalid_argument);
    CHECK_THROWS_AS(loss_value(kHinge, 0.3, 2), std::invalid_argument);
    CHECK_THROWS_AS(loss_deriv(kLogistic, 0.3, -2), std::invalid_argument);
}

TEST_CASE("logistic link values and antisymmetry") {
    CHECK(link(kLogistic, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(link(kLogistic, 0.8) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> mu(0.01, 0.99);
    double prev_mu = 0.0, prev_link = -1e300;
    for (int i = 0; i < 100; ++i) {
        const double m = mu(rng);
        CHECK(std::abs(link(kLogistic, m) + link(kLogistic, 1.0 - m)) <= 1e-12);
        // sign agreement with mu - 1/2
        if (m > 0.5) CHECK(link(kLogistic, m) > 0.0);
        if (m < 0.5) CHECK(link(kLogistic, m) < 0.0);
        (void)prev_mu;
        (void)prev_link;
    }
    // monotone increasing
    double last = link(kLogistic, 0.01);
    for (double m = 0.02; m < 1.0 - 1e-9; m += 0.01) {
        const double cur = link(kLogistic, m);
        CHECK(cur > last);
        last = cur;
    }
}

TEST_CASE("link rejects out-of-range probabilities and hinge") {
    CHECK_THROWS_AS(link(kLogistic, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(link(kLogistic, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(link(kLogistic, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(link(kHinge, 0.7), std::invalid_argument);
}

TEST_CASE("minimum score magnitude under the noise margin") {
    CHECK(m_delta(kLogistic, 0.3) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(m_delta(kLogistic, 0.25) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(m_delta(kLogistic, 1e-6) < 1e-5);
    // strictly increasing in delta; integer stepping keeps d strictly below 1/2
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double v = m_delta(kLogistic, 0.05 * i);
        CHECK(v > prev);
        prev = v;
    }
    // equals max of the two link magnitudes at the margin edges
    const double d = 0.17;
    const double expect = std::max(link(kLogistic, 0.5 + d), std::abs(link(kLogistic, 0.5 - d)));
    CHECK(m_delta(kLogistic, d) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("m_delta rejects out-of-range margins") {
    CHECK_THROWS_AS(m_delta(kLogistic, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m_delta(kLogistic, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(m_delta(kLogistic, -0.1), std::invalid_argument);
}

TEST_CASE("pointwise optimal score per loss kind") {
    CHECK(pointwise_optimal_score(kLogistic, 0.8) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(pointwise_optimal_score(kHinge, 0.8) == 1.0);
    CHECK(pointwise_optimal_score(kHinge, 0.2) == -1.0);
    CHECK(pointwise_optimal_score(kHinge, 0.5) == 0.0);
}

TEST_CASE("loss kinds parse by name") {
    CHECK(parse_loss("logistic").kind == LossKind::kLogistic);
    CHECK(parse_loss("hinge").kind == LossKind::kHinge);
    CHECK_THROWS_AS(parse_loss("squared"), std::invalid_argument);
    CHECK(loss_name(kLogistic) == std::string("logistic"));
    CHECK(loss_name(kHinge) == std::string("hinge"));
}

TEST_CASE("lipschitz constant is one for both kinds") {
    CHECK(kLogistic.lipschitz() == 1.0);
    CHECK(kHinge.lipschitz() == 1.0);
}
