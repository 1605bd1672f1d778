#pragma once

#include <string>

namespace rfsgd {

enum class LossKind { kLogistic, kHinge };

/// Classification surrogate loss l(score, label) with label in {-1, +1}.
/// Both supported losses are convex and 1-Lipschitz in the score.
struct SurrogateLoss {
  LossKind kind = LossKind::kLogistic;

  double lipschitz() const { return 1.0; }
};

SurrogateLoss parse_loss(const std::string& name);
std::string loss_name(const SurrogateLoss& loss);

/// l(score, y). Throws if y is not -1 or +1.
double loss_value(const SurrogateLoss& loss, double score, int y);

/// Derivative in the score argument. For the hinge loss the subgradient 0 is
/// used at the kink. Bounded by 1 in magnitude.
double loss_deriv(const SurrogateLoss& loss, double score, int y);

/// Inverse link h*(mu): the score whose conditional risk is minimal when the
/// positive-class probability is mu in (0, 1). Only the logistic loss has an
/// invertible link; the hinge loss is rejected.
double link(const SurrogateLoss& loss, double mu);

/// Score margin m(delta) = max{h*(1/2 + delta), |h*(1/2 - delta)|} for
/// delta in (0, 1/2). Logistic loss only.
double m_delta(const SurrogateLoss& loss, double delta);

/// Pointwise risk minimizer for positive-class probability mu. Logistic:
/// h*(mu). Hinge: the unit-margin score sgn(2 mu - 1), which attains the
/// minimal conditional hinge risk 2 min(mu, 1 - mu).
double pointwise_optimal_score(const SurrogateLoss& loss, double mu);

}  // namespace rfsgd
