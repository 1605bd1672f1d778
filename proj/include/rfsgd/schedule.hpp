#pragma once

#include <string>
#include <vector>

namespace rfsgd {

/// Averaged-SGD schedule parameters. lipschitz is the loss constant L and
/// feature_bound the feature-norm bound R; both are 1 for the shipped losses
/// and the paired Fourier features.
struct Schedule {
  double lambda;
  double gamma;
  double lipschitz = 1.0;
  double feature_bound = 1.0;

  Schedule(double lambda, double gamma, double lipschitz = 1.0,
           double feature_bound = 1.0);
};

struct StepSizes {
  double eta;    // learning rate at step t
  double alpha;  // direct averaging weight of iterate t for a fixed horizon
  double theta;  // recursive averaging weight at step t
};

/// eta_t = 2 / (lambda (gamma + t)), t >= 1.
double learning_rate(const Schedule& s, long t);

/// theta_t = 2 (gamma + t) / ((t + 1)(2 gamma + t)), t >= 1.
double averaging_theta(const Schedule& s, long t);

/// alpha_t(T) = 2 (gamma + t - 1) / ((2 gamma + T)(T + 1)), 1 <= t <= T + 1.
/// The weights over t = 1..T+1 sum to one exactly.
double averaging_alpha(const Schedule& s, long t, long horizon);

/// All three quantities at step t for the given horizon.
StepSizes step_size(const Schedule& s, long t, long horizon);

/// Convergence-regime checks on the first step size and the initial norm.
/// Returns one warning string per violated condition; empty means clean.
/// Violations do not stop a run.
std::vector<std::string> check_schedule_preconditions(const Schedule& s,
                                                      double initial_norm = 0.0);

}  // namespace rfsgd
