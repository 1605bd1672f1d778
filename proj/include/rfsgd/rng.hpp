#pragma once

#include <cstdint>
#include <random>

namespace rfsgd {

// splitmix64 step; the workhorse behind seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Named random streams. Feature draws and data draws use distinct streams so
// changing the feature count never perturbs the data sequence of a run.
enum class RngStream : std::uint64_t {
  kFeatures = 1,
  kData = 2,
  kTestSet = 3,
  kSigmaPilot = 4,
  kNormDecayPoints = 5,
  kNormDecayFeatures = 6,
  kPowerIteration = 7,
  kScatter = 8,
};

// Deterministic seed for (base, stream, index). index enumerates runs or
// replicates within a stream.
inline std::uint64_t derive_seed(std::uint64_t base, RngStream stream,
                                 std::uint64_t index = 0) {
  std::uint64_t state = base ^ 0xd1b54a32d192ed03ULL;
  (void)splitmix64(state);
  state ^= static_cast<std::uint64_t>(stream);
  (void)splitmix64(state);
  state ^= index;
  return splitmix64(state);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace rfsgd
