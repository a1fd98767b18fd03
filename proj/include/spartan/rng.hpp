#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spartan/error.hpp"

namespace spartan {

namespace detail {

// splitmix64 step; used only to key the main engine and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s = h ^ (b + 0x9E3779B97F4A7C15ULL);
  return splitmix64(s);
}

// Seed sequence that fills engine state from a splitmix64 stream. Unlike
// std::seed_seq this is trivially portable and collision-free per key.
struct SplitMixSeq {
  std::uint64_t key;
  using result_type = std::uint32_t;
  template <class It>
  void generate(It first, It last) {
    std::uint64_t s = key;
    while (first != last) {
      const std::uint64_t v = splitmix64(s);
      *first++ = static_cast<std::uint32_t>(v);
      if (first != last) *first++ = static_cast<std::uint32_t>(v >> 32);
    }
  }
};

}  // namespace detail

// Deterministic random stream keyed by (seed, stream_id). Identical keys give
// bit-identical draw sequences; distinct logical tasks own distinct streams so
// replicate-level parallelism never races on generator state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    detail::SplitMixSeq seq{detail::mix_pair(seed, stream_id)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream derived from this stream's identity; independent of the
  // parent's current position.
  RngStream substream(std::uint64_t id) const {
    return RngStream(seed_, detail::mix_pair(stream_id_ ^ 0xA5A5A5A5A5A5A5A5ULL, id));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double uniform01_open() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("RngStream::below: zero bound");
    const std::uint64_t limit = (UINT64_MAX / bound) * bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal via Box-Muller (the pair's second value is cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw UsageError("RngStream::gamma: shape must be positive");
    if (shape < 1.0) {
      const double u = uniform01_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spartan
