#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rfsgd {

struct Sample {
  std::array<double, 2> x;
  std::int8_t y;  // -1 or +1
};

/// Planar four-square distribution with constant label noise.
///
/// The marginal is uniform over four axis-aligned squares of side 0.9 that sit
/// in the corners of [-1, 1]^2, separated by a band of width 0.2 around the
/// axes. Each square carries probability mass 1/4 and a constant conditional
/// positive-class probability. The default pairing gives squares whose
/// coordinates share a sign probability 0.8 and the other two 0.2, so the
/// conditional probability stays 0.3 away from 1/2 everywhere and the Bayes
/// rule is sgn(x1 x2) with risk exactly 0.2.
class SyntheticDistribution {
 public:
  static constexpr int kDim = 2;

  enum class Pairing { kDiagonal, kAntiDiagonal };

  /// Square order: (-,-), (-,+), (+,-), (+,+).
  explicit SyntheticDistribution(const std::array<double, 4>& cond_probs);
  explicit SyntheticDistribution(Pairing pairing = Pairing::kDiagonal,
                                 double high = 0.8);

  bool in_support(std::span<const double> x) const;

  /// P(y = +1 | x). Throws outside the support.
  double conditional_prob(std::span<const double> x) const;

  /// Bayes classifier, with ties sent to -1.
  int bayes_predict(std::span<const double> x) const;

  /// Expected min(p, 1 - p) over the marginal; closed form.
  double bayes_risk() const;

  /// min over squares of |p - 1/2|; positive for low-noise settings.
  double noise_margin() const;

  const std::array<double, 4>& conditional_probs() const { return probs_; }

  /// One-at-a-time sampler. A fixed number of engine draws per sample keeps
  /// streaming and batch sampling on the same seed bit-identical.
  class Stream {
   public:
    Stream(const SyntheticDistribution& dist, std::uint64_t seed);
    Sample next();

   private:
    const SyntheticDistribution* dist_;
    std::mt19937_64 rng_;
  };

  std::vector<Sample> sample(long n, std::uint64_t seed) const;

 private:
  int square_index(std::span<const double> x) const;  // -1 outside support

  std::array<double, 4> probs_;
};

}  // namespace rfsgd
