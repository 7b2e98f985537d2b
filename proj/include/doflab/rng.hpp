#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace doflab {

enum class StreamRole : std::uint64_t {
  TrainX = 1,
  TrainNoise = 2,
  Test = 3,
  PureNoise = 4,
  Forest = 5,
  Signal = 6,
  Fold = 7,
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t hash_key(std::uint64_t seed, std::uint64_t replication, StreamRole role,
                       std::uint64_t sub = 0);

// Counter-based generator: the n-th output is mix64(key + n * gamma).
// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : rng_(key) {}
  RandomStream(std::uint64_t seed, std::uint64_t replication, StreamRole role, std::uint64_t sub = 0)
      : rng_(hash_key(seed, replication, role, sub)) {}

  double normal() { return normal_(rng_); }
  // Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(rng_); }
  double rademacher() { return (rng_() >> 63) ? 1.0 : -1.0; }
  std::uint64_t bits() { return rng_(); }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  CounterRng& engine() { return rng_; }

 private:
  CounterRng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace doflab
