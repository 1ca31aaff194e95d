#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace szegolab {

/// Splittable counter-style random stream built on the splitmix64 mixer.
///
/// Substreams are derived by key mixing, not by jumping, so a Monte Carlo
/// driver can hand disjoint streams to workers and the combined result is
/// independent of how the work was scheduled.
class SplitStream {
 public:
  explicit SplitStream(std::uint64_t seed) : state_(mix(seed ^ kGamma)) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (polar form avoided to keep the
  /// consumption of the stream fixed per call pair).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    // u1 == 0 would produce inf; the mapping below keeps u1 in (0,1].
    double r = std::sqrt(-2.0 * std::log1p(u1 - 1.0 + 0x1.0p-54));
    double c = std::cos(6.283185307179586476925286766559 * u2);
    double s = std::sin(6.283185307179586476925286766559 * u2);
    spare_ = r * s;
    has_spare_ = true;
    return r * c;
  }

  /// Deterministic child stream for a task index; children of distinct
  /// indices are decorrelated regardless of draw counts on the parent.
  SplitStream substream(std::uint64_t index) const {
    return SplitStream(mix(state_ ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace szegolab
