#include "rfsgd/data.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsgd {

namespace {

constexpr double kInner = 0.1;  // gap half-width around the axes
constexpr double kOuter = 1.0;
constexpr double kSide = kOuter - kInner;

void check_probs(const std::array<double, 4>& probs) {
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("SyntheticDistribution: conditional probabilities must lie in [0, 1]");
    }
  }
}

}  // namespace

SyntheticDistribution::SyntheticDistribution(const std::array<double, 4>& cond_probs)
    : probs_(cond_probs) {
  check_probs(probs_);
}

SyntheticDistribution::SyntheticDistribution(Pairing pairing, double high)
    : probs_{} {
  if (!(high >= 0.0 && high <= 1.0)) {
    throw std::invalid_argument("SyntheticDistribution: probability must lie in [0, 1]");
  }
  const double low = 1.0 - high;
  if (pairing == Pairing::kDiagonal) {
    probs_ = {high, low, low, high};
  } else {
    probs_ = {low, high, high, low};
  }
}

int SyntheticDistribution::square_index(std::span<const double> x) const {
  if (x.size() != kDim) {
    throw std::invalid_argument("SyntheticDistribution: point must be two dimensional");
  }
  int idx = 0;
  for (int j = 0; j < kDim; ++j) {
    const double a = std::abs(x[j]);
    if (a < kInner || a > kOuter) return -1;
    if (x[j] > 0.0) idx |= (1 << (1 - j));
  }
  return idx;
}

bool SyntheticDistribution::in_support(std::span<const double> x) const {
  return square_index(x) >= 0;
}

double SyntheticDistribution::conditional_prob(std::span<const double> x) const {
  const int idx = square_index(x);
  if (idx < 0) {
    throw std::invalid_argument("SyntheticDistribution: point outside the support squares");
  }
  return probs_[static_cast<std::size_t>(idx)];
}

int SyntheticDistribution::bayes_predict(std::span<const double> x) const {
  return conditional_prob(x) > 0.5 ? 1 : -1;
}

double SyntheticDistribution::bayes_risk() const {
  double risk = 0.0;
  for (double p : probs_) risk += 0.25 * (p > 0.5 ? 1.0 - p : p);
  return risk;
}

double SyntheticDistribution::noise_margin() const {
  double margin = 0.5;
  for (double p : probs_) {
    const double d = std::abs(p - 0.5);
    if (d < margin) margin = d;
  }
  return margin;
}

SyntheticDistribution::Stream::Stream(const SyntheticDistribution& dist,
                                      std::uint64_t seed)
    : dist_(&dist), rng_(seed) {}

Sample SyntheticDistribution::Stream::next() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Four draws per sample, always consumed in the same order.
  const double us = unit(rng_);
  const double u1 = unit(rng_);
  const double u2 = unit(rng_);
  const double uy = unit(rng_);

  int idx = static_cast<int>(us * 4.0);
  if (idx > 3) idx = 3;
  const double sign1 = (idx & 2) ? 1.0 : -1.0;
  const double sign2 = (idx & 1) ? 1.0 : -1.0;

  Sample s;
  s.x[0] = sign1 * (kInner + u1 * kSide);
  s.x[1] = sign2 * (kInner + u2 * kSide);
  s.y = (uy < dist_->probs_[static_cast<std::size_t>(idx)]) ? 1 : -1;
  return s;
}

std::vector<Sample> SyntheticDistribution::sample(long n, std::uint64_t seed) const {
  if (n < 0) throw std::invalid_argument("SyntheticDistribution::sample: n must be >= 0");
  Stream stream(*this, seed);
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(stream.next());
  return out;
}

}  // namespace rfsgd
