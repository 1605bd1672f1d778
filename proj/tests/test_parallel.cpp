#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rfsgd/parallel.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

using namespace rfsgd;

namespace {

// Value function with enough digit churn that reassociation would show up.
double wobble(std::int64_t i) {
    return std::sin(0.001 * static_cast<double>(i)) + 1e-9 * static_cast<double>(i % 7);
}

double plain_sum(std::int64_t n) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += wobble(i);
    return s;
}

}  // namespace

TEST_CASE("max_threads reports at least one worker") {
    CHECK(max_threads() >= 1);
}

TEST_CASE("parallel_for visits every index exactly once") {
    const std::int64_t n = 10007;
    std::vector<std::atomic<int>> hits(n);
    for (auto& h : hits) h.store(0);
    parallel_for(n, [&](std::int64_t i) { hits[i].fetch_add(1); });
    for (std::int64_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("parallel_for_dynamic visits every index exactly once") {
    const std::int64_t n = 4097;
    std::vector<std::atomic<int>> hits(n);
    for (auto& h : hits) h.store(0);
    parallel_for_dynamic(n, [&](std::int64_t i) { hits[i].fetch_add(1); });
    for (std::int64_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("serial_for covers the range in order") {
    std::vector<std::int64_t> seen;
    serial_for(5, [&](std::int64_t i) { seen.push_back(i); });
    REQUIRE(seen.size() == 5);
    for (std::int64_t i = 0; i < 5; ++i) CHECK(seen[i] == i);
}

TEST_CASE("blocked_sum is bitwise identical to its serial variant") {
    // Sizes straddling the block boundary, where a naive parallel
    // reduction would reassociate and drift in the last bits.
    for (std::int64_t n : {std::int64_t{0}, std::int64_t{1}, std::int64_t{2047},
                           std::int64_t{2048}, std::int64_t{2049}, std::int64_t{100000}}) {
        CAPTURE(n);
        const double par = blocked_sum(n, wobble);
        const double ser = blocked_sum_serial(n, wobble);
        CHECK(par == ser);
    }
}

TEST_CASE("blocked_sum short sizes equal the plain left-to-right sum") {
    // For n at or below one block the blocked scheme degenerates to the
    // plain loop, so the result must match bit for bit.
    for (std::int64_t n : {std::int64_t{1}, std::int64_t{17}, std::int64_t{2048}}) {
        CAPTURE(n);
        CHECK(blocked_sum(n, wobble) == plain_sum(n));
    }
}

TEST_CASE("blocked_sum stays close to a compensated reference on large input") {
    const std::int64_t n = 300000;
    // Kahan summation as an independent high-accuracy oracle.
    double s = 0.0, c = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double t = wobble(i) - c;
        const double u = s + t;
        c = (u - s) - t;
        s = u;
    }
    const double got = blocked_sum(n, wobble);
    CHECK(std::abs(got - s) <= 1e-9 * std::max(1.0, std::abs(s)));
}

TEST_CASE("blocked_sum of zero elements is zero") {
    CHECK(blocked_sum(0, wobble) == 0.0);
}
