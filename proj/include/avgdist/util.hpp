#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace avgdist {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Deterministic 64-bit generator (splitmix64). Used instead of the std
/// distributions so that seeded runs are reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in {0, ..., bound-1}, bound > 0.
  uint64_t below(uint64_t bound) {
    // rejection sampling to avoid modulo bias
    uint64_t limit = (~uint64_t{0} / bound) * bound;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  int index(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

  /// Uniform in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace avgdist
