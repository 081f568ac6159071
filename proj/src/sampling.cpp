#include "aristo/sampling.hpp"

#include "aristo/model.hpp"

namespace aristo {

namespace {
constexpr int kMaxAttempts = 100000;
}

BoxSampler::BoxSampler(std::uint64_t seed, double box, double min_sep)
    : rng_(seed), box_(box), min_sep_(min_sep) {
  if (!(box > 0.0)) throw Error(ErrorKind::InvalidConfig, "box must be positive");
}

double BoxSampler::uniform(double lo, double hi) {
  const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Vec3 BoxSampler::real_state(const std::function<bool(const Vec3&)>& accept) {
  for (int i = 0; i < kMaxAttempts; ++i) {
    const double u = uniform(-box_, box_);
    const double v = uniform(-box_, box_);
    const double w = uniform(-box_, box_);
    const Vec3 x(u, v, w);
    if (min_separation(State3(x)) < min_sep_) continue;
    if (accept && !accept(x)) continue;
    return x;
  }
  throw Error(ErrorKind::InvalidConfig, "sampler could not find an admissible state");
}

ExtendedPoint BoxSampler::extended_point(const std::function<bool(const ExtendedPoint&)>& accept) {
  for (int i = 0; i < kMaxAttempts; ++i) {
    const Vec3 x = real_state();
    const double re = uniform(-box_, box_);
    const double im = uniform(-box_, box_);
    const ExtendedPoint p{Complex(re, im), State3(x)};
    if (accept && !accept(p)) continue;
    return p;
  }
  throw Error(ErrorKind::InvalidConfig, "sampler could not find an admissible point");
}

}  // namespace aristo
