#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "hypres/rational.hpp"

namespace hypres {

// Deterministic RNG used by all randomized suites.  Check-level streams are
// derived from the run seed and the check name so parallel execution cannot
// change any drawn value.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  Rng(uint64_t seed, const std::string& stream) : eng_(seed ^ fnv1a(stream)) {}

  uint64_t next() { return eng_(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  double uniform(double lo = 0.0, double hi = 1.0) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // small random rational with numerator in [-num_max, num_max] and
  // denominator in [1, den_max]
  Rational rational(int num_max = 9, int den_max = 4) {
    long num = uniform_int(-num_max, num_max);
    long den = uniform_int(1, den_max);
    return Rational(num, den);
  }

  Rational nonzero_rational(int num_max = 9, int den_max = 4) {
    Rational r = rational(num_max, den_max);
    while (r.is_zero()) r = rational(num_max, den_max);
    return r;
  }

  static uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hypres
