#pragma once

#include <cmath>
#include <cstdint>

namespace agnlab {

// Deterministic random streams used by the simulator and the optimizer
// restarts.  The generator is SplitMix64 (Steele, Lea, Flood 2014): state
// advances by the 64-bit golden ratio and is scrambled by the murmur-style
// finalizer below.  It is fixed on purpose: golden outputs in the tests and
// the byte-level reproducibility of the command line tool depend on it, so
// it must not be swapped for an unpinned library engine.

inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return splitmix64_finalize(state_);
  }

 private:
  std::uint64_t state_;
};

// Independent substream: stream(seed, i) seeds SplitMix64 with
// splitmix64_finalize(seed ^ splitmix64_finalize(i + 1)).  Streams for
// different indices can be drawn in any order (one per Monte Carlo trial).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t index)
      : gen_(splitmix64_finalize(seed ^ splitmix64_finalize(index + 1))) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method; the spare value is
  // cached, so draws come in deterministic order.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
  }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace agnlab
