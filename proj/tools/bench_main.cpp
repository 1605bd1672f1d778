// Timing harness for the OpenMP kernels against their serial references.
// Every pair is also checked for bitwise-identical output, which the
// fixed-block reductions guarantee regardless of thread count.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "rfsgd/data.hpp"
#include "rfsgd/features.hpp"
#include "rfsgd/kernel.hpp"
#include "rfsgd/parallel.hpp"
#include "rfsgd/rng.hpp"
#include "rfsgd/spectra.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s %10.2f %10.2f %8.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", rfsgd::max_threads());
  std::printf("%-28s %10s %10s %9s   %s\n", "kernel", "serial/ms", "openmp/ms",
              "speedup", "output");

  const rfsgd::SyntheticDistribution dist;
  const rfsgd::GaussianKernel kernel(1.0, 2);

  {
    const long n = 20000;
    const int m = 1000;
    const auto samples = dist.sample(n, 11);
    std::vector<double> pts;
    pts.reserve(2 * n);
    for (const auto& s : samples) {
      pts.push_back(s.x[0]);
      pts.push_back(s.x[1]);
    }
    const auto fs = rfsgd::FeatureSet::sample(kernel, m, 12);
    std::vector<double> out_s(static_cast<std::size_t>(n) * m);
    std::vector<double> out_p(out_s.size());
    const double ts = time_best_of(3, [&] { rfsgd::feature_matrix_serial(fs, pts, n, out_s); });
    const double tp = time_best_of(3, [&] { rfsgd::feature_matrix(fs, pts, n, out_p); });
    report("feature_matrix 20000x1000", ts, tp, bits_equal(out_s, out_p));
  }

  {
    const long n = 700;
    const auto samples = dist.sample(n, 13);
    std::vector<double> pts;
    pts.reserve(2 * n);
    for (const auto& s : samples) {
      pts.push_back(s.x[0]);
      pts.push_back(s.x[1]);
    }
    std::vector<double> g_s;
    std::vector<double> g_p;
    const double ts = time_best_of(3, [&] { g_s = rfsgd::gram_exact_serial(kernel, pts, n); });
    const double tp = time_best_of(3, [&] { g_p = rfsgd::gram_exact(kernel, pts, n); });
    report("gram_exact 700x700", ts, tp, bits_equal(g_s, g_p));

    const auto fs = rfsgd::FeatureSet::sample(kernel, 512, 14);
    std::vector<double> a_s;
    std::vector<double> a_p;
    const double tas = time_best_of(3, [&] { a_s = rfsgd::gram_approx_serial(fs, pts, n); });
    const double tap = time_best_of(3, [&] { a_p = rfsgd::gram_approx(fs, pts, n); });
    report("gram_approx 700x700 M=512", tas, tap, bits_equal(a_s, a_p));

    // Same matrix through both reduction paths drives the norm difference.
    double norm_s = 0.0;
    double norm_p = 0.0;
    const double tns = time_best_of(3, [&] {
      norm_s = rfsgd::spectral_norm(g_s, n).value;
    });
    const double tnp = time_best_of(3, [&] {
      norm_p = rfsgd::spectral_norm(g_p, n).value;
    });
    report("spectral_norm 700x700", tns, tnp, norm_s == norm_p);
  }

  {
    const std::ptrdiff_t n = 20'000'000;
    double s_s = 0.0;
    double s_p = 0.0;
    const double ts = time_best_of(3, [&] {
      s_s = rfsgd::blocked_sum_serial(n, [](std::ptrdiff_t i) {
        const double x = static_cast<double>(i % 1024) * 1e-3;
        return x * x - x;
      });
    });
    const double tp = time_best_of(3, [&] {
      s_p = rfsgd::blocked_sum(n, [](std::ptrdiff_t i) {
        const double x = static_cast<double>(i % 1024) * 1e-3;
        return x * x - x;
      });
    });
    report("blocked_sum 2e7", ts, tp, s_s == s_p);
  }

  return 0;
}
