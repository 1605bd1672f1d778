#include "rfsgd/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsgd {

namespace {

void check_label(int y) {
  if (y != -1 && y != 1) throw std::invalid_argument("loss: label must be -1 or +1");
}

// log(1 + exp(-v)) without overflow for large negative v.
double logistic_value(double v) {
  if (v < -30.0) return -v + std::log1p(std::exp(v));
  return std::log1p(std::exp(-v));
}

}  // namespace

SurrogateLoss parse_loss(const std::string& name) {
  if (name == "logistic") return SurrogateLoss{LossKind::kLogistic};
  if (name == "hinge") return SurrogateLoss{LossKind::kHinge};
  throw std::invalid_argument("unknown loss: " + name);
}

std::string loss_name(const SurrogateLoss& loss) {
  return loss.kind == LossKind::kLogistic ? "logistic" : "hinge";
}

double loss_value(const SurrogateLoss& loss, double score, int y) {
  check_label(y);
  const double margin = score * y;
  switch (loss.kind) {
    case LossKind::kLogistic:
      return logistic_value(margin);
    case LossKind::kHinge:
      return margin >= 1.0 ? 0.0 : 1.0 - margin;
  }
  throw std::logic_error("unreachable");
}

double loss_deriv(const SurrogateLoss& loss, double score, int y) {
  check_label(y);
  const double margin = score * y;
  switch (loss.kind) {
    case LossKind::kLogistic: {
      // -y / (1 + exp(y score)), computed stably on both tails.
      if (margin > 30.0) return -y * std::exp(-margin);
      if (margin < -30.0) return static_cast<double>(-y);
      return -y / (1.0 + std::exp(margin));
    }
    case LossKind::kHinge:
      return margin < 1.0 ? static_cast<double>(-y) : 0.0;
  }
  throw std::logic_error("unreachable");
}

double link(const SurrogateLoss& loss, double mu) {
  if (loss.kind != LossKind::kLogistic) {
    throw std::invalid_argument("link: only the logistic loss has an invertible link");
  }
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("link: probability must lie strictly inside (0, 1)");
  }
  return std::log(mu / (1.0 - mu));
}

double m_delta(const SurrogateLoss& loss, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("m_delta: delta must lie in (0, 1/2)");
  }
  const double up = link(loss, 0.5 + delta);
  const double down = std::abs(link(loss, 0.5 - delta));
  return up > down ? up : down;
}

double pointwise_optimal_score(const SurrogateLoss& loss, double mu) {
  if (loss.kind == LossKind::kLogistic) return link(loss, mu);
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("pointwise_optimal_score: probability must lie in [0, 1]");
  }
  if (mu > 0.5) return 1.0;
  if (mu < 0.5) return -1.0;
  return 0.0;
}

}  // namespace rfsgd
