#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace swarmopt {

/// Anything that can drive point sampling: a unit-interval draw and a uniform index.
template <typename R>
concept UnitSampler = requires(R& r, std::size_t m) {
  { r.uniform() } -> std::convertible_to<double>;
  { r.index(m) } -> std::convertible_to<std::size_t>;
};

/// Seeded 64-bit Mersenne Twister with the few draws the library needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., m-1}; m must be positive.
  std::size_t index(std::size_t m) {
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(engine_);
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Deterministic seed for a sub-stream, e.g. one per agent.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace swarmopt
