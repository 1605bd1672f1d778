#include "rfsgd/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace rfsgd {

namespace {

void check_step(long t) {
  if (t < 1) throw std::invalid_argument("schedule: step index must be >= 1");
}

}  // namespace

Schedule::Schedule(double lambda_in, double gamma_in, double lipschitz_in,
                   double feature_bound_in)
    : lambda(lambda_in),
      gamma(gamma_in),
      lipschitz(lipschitz_in),
      feature_bound(feature_bound_in) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Schedule: lambda must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("Schedule: gamma must be positive");
  if (!(lipschitz > 0.0)) throw std::invalid_argument("Schedule: lipschitz must be positive");
  if (!(feature_bound > 0.0)) throw std::invalid_argument("Schedule: feature bound must be positive");
}

double learning_rate(const Schedule& s, long t) {
  check_step(t);
  return 2.0 / (s.lambda * (s.gamma + static_cast<double>(t)));
}

double averaging_theta(const Schedule& s, long t) {
  check_step(t);
  const double td = static_cast<double>(t);
  return 2.0 * (s.gamma + td) / ((td + 1.0) * (2.0 * s.gamma + td));
}

double averaging_alpha(const Schedule& s, long t, long horizon) {
  check_step(t);
  if (horizon < 0) throw std::invalid_argument("schedule: horizon must be >= 0");
  if (t > horizon + 1) throw std::invalid_argument("schedule: step index exceeds horizon + 1");
  const double td = static_cast<double>(t);
  const double hd = static_cast<double>(horizon);
  return 2.0 * (s.gamma + td - 1.0) / ((2.0 * s.gamma + hd) * (hd + 1.0));
}

StepSizes step_size(const Schedule& s, long t, long horizon) {
  return StepSizes{learning_rate(s, t), averaging_alpha(s, t, horizon),
                   averaging_theta(s, t)};
}

std::vector<std::string> check_schedule_preconditions(const Schedule& s,
                                                      double initial_norm) {
  std::vector<std::string> warnings;
  char buf[160];
  const double eta1 = learning_rate(s, 1);
  const double cap = std::min(1.0 / s.lipschitz, 1.0 / (2.0 * s.lambda));
  if (eta1 > cap) {
    std::snprintf(buf, sizeof(buf),
                  "first step size %.6g exceeds min(1/L, 1/(2 lambda)) = %.6g; "
                  "the exponential-regime guarantees do not apply",
                  eta1, cap);
    warnings.emplace_back(buf);
  }
  const double norm_cap = (2.0 * eta1 + 1.0 / s.lambda) * s.lipschitz * s.feature_bound;
  if (initial_norm > norm_cap) {
    std::snprintf(buf, sizeof(buf),
                  "initial hypothesis norm %.6g exceeds (2 eta_1 + 1/lambda) L R = %.6g",
                  initial_norm, norm_cap);
    warnings.emplace_back(buf);
  }
  return warnings;
}

}  // namespace rfsgd
