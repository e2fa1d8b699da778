#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "error.hpp"

namespace shapval {

// SplitMix64 finalizer. All randomness in the library flows through this
// mixing function so that results are identical across platforms and across
// worker counts: every atomic sampling task derives its own stream from
// (master seed, stream tag, task coordinates) instead of sharing a generator.
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> tags) {
  uint64_t h = mix64(master);
  for (uint64_t t : tags) h = mix64(h ^ mix64(t));
  return h;
}

// Stream tags keep independently seeded phases from colliding.
namespace stream {
constexpr uint64_t kPermutationTask = 0xa1;
constexpr uint64_t kStratumSample = 0xa2;
constexpr uint64_t kRun = 0xa3;
constexpr uint64_t kTrial = 0xa4;
constexpr uint64_t kBlobs = 0xa5;
constexpr uint64_t kSplit = 0xa6;
constexpr uint64_t kGroupShuffle = 0xa7;
constexpr uint64_t kRandomGame = 0xa8;
constexpr uint64_t kRemovalOrder = 0xa9;
constexpr uint64_t kSweepCell = 0xaa;
constexpr uint64_t kMethod = 0xab;
}  // namespace stream

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    require(bound > 0, ErrorCode::Internal, "rng bound must be positive");
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; keeps the spare deviate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (size_t i = items.size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(below(i + 1));
      std::swap(items[i], items[j]);
    }
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace shapval
