#ifndef HKST_RANDOM_HPP
#define HKST_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hkst {

/// SplitMix64 (Steele, Lea, Flood 2014). Pinned generator for every seeded
/// phantom: golden digests depend on this exact sequence, so do not swap it
/// for a standard-library engine or distribution.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_zero() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Two independent standard normals by the Box-Muller transform.
  std::pair<double, double> normal_pair() noexcept {
    const double u1 = uniform_open_zero();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace hkst

#endif  // HKST_RANDOM_HPP
