#pragma once

// Seeded sampling of states in the real box [-R, R]^3 with rejection.

#include <cstdint>
#include <functional>
#include <random>

#include "aristo/types.hpp"

namespace aristo {

class BoxSampler {
 public:
  /// States closer than `min_sep` to a collision are always rejected.
  explicit BoxSampler(std::uint64_t seed, double box = 5.0, double min_sep = 0.1);

  /// Uniform in [lo, hi). Built from raw 64-bit draws so sequences do not
  /// depend on the standard library's distribution implementation.
  double uniform(double lo, double hi);

  /// Uniform real state accepted by `accept` (if given). Throws InvalidConfig
  /// after 100000 consecutive rejections.
  Vec3 real_state(const std::function<bool(const Vec3&)>& accept = {});

  /// Real state with a complex tau drawn from the same box.
  ExtendedPoint extended_point(const std::function<bool(const ExtendedPoint&)>& accept = {});

  double box() const { return box_; }

 private:
  std::mt19937_64 rng_;
  double box_;
  double min_sep_;
};

}  // namespace aristo
