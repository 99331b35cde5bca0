#pragma once

#include <concepts>
#include <cstdint>

namespace mlpforge {

/// Anything that yields uniform doubles in [0, 1). The forward and training
/// routines are templated on this so tests can count or script draws.
template <typename R>
concept UniformSource = requires(R& r) {
  { r.uniform() } -> std::convertible_to<double>;
};

/// SplitMix64 (Steele, Lea & Flood). Fully specified by its seed, so the
/// stream is identical on every platform and in every implementation.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Top 53 bits scaled by 2^-53: exactly representable, in [0, 1).
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// uniform() * 2 - 1, in [-1, 1).
  constexpr double uniform_signed() noexcept { return uniform() * 2.0 - 1.0; }

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t state() const noexcept { return state_; }

  friend constexpr bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

using DeterministicRng = SplitMix64;

}  // namespace mlpforge
