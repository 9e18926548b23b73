#pragma once

#include <cstdint>
#include <random>

namespace meshfree {

/// Seeded generator with a platform-independent double conversion
/// (std::uniform_real_distribution is not bit-reproducible across libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace meshfree
