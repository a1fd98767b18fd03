#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"
#include "spartan/sobol_tables.hpp"

namespace spartan {

// r points in [0,1)^d produced by a low-discrepancy (or comparison) generator.
struct DesignPointSet {
  std::size_t r = 0;
  std::size_t d = 0;
  Matrix points;
  std::string generator_tag;
};

enum class Scramble { none, digital_shift };

inline constexpr std::size_t kSobolMaxPoints = std::size_t{1} << 20;

// Incremental Sobol generator (Joe-Kuo direction numbers, 32-bit precision,
// Gray-code order). The all-zeros point at index 0 is skipped: the first
// emitted point is (0.5, ..., 0.5).
class SobolSequence {
 public:
  explicit SobolSequence(std::size_t d, Scramble scramble = Scramble::none,
                         std::uint64_t scramble_seed = 0)
      : d_(d), state_(d, 0), shift_(d, 0) {
    if (d < 1 || d > static_cast<std::size_t>(detail::kSobolMaxDim))
      throw UsageError("sobol: dimension beyond direction-number table");
    direction_.assign(d * kBits, 0);
    for (std::size_t j = 0; j < d; ++j) init_dimension(j);
    if (scramble == Scramble::digital_shift) {
      RngStream rng(scramble_seed, /*stream_id=*/0x50b01);
      for (std::size_t j = 0; j < d; ++j)
        shift_[j] = static_cast<std::uint32_t>(rng.next_u64() >> 32);
    }
  }

  std::size_t dim() const { return d_; }
  std::size_t emitted() const { return index_; }

  // Next point of the sequence, in Gray-code order.
  std::vector<double> next() {
    if (index_ >= kSobolMaxPoints) throw UsageError("sobol: point budget exhausted");
    // Advance from sequence index `index_` to `index_ + 1`: flip the
    // direction number of the lowest zero bit of index_.
    const unsigned c = static_cast<unsigned>(std::countr_one(index_));
    for (std::size_t j = 0; j < d_; ++j) state_[j] ^= direction_[j * kBits + c];
    ++index_;
    std::vector<double> point(d_);
    for (std::size_t j = 0; j < d_; ++j)
      point[j] = static_cast<double>(state_[j] ^ shift_[j]) * 0x1.0p-32;
    return point;
  }

 private:
  static constexpr unsigned kBits = 32;

  void init_dimension(std::size_t j) {
    std::uint32_t* v = direction_.data() + j * kBits;
    if (j == 0) {
      for (unsigned k = 0; k < kBits; ++k) v[k] = 1u << (31 - k);
      return;
    }
    const std::uint32_t poly = detail::kSobolPoly[j];
    const unsigned s = 31 - static_cast<unsigned>(std::countl_zero(poly));
    for (unsigned k = 0; k < s && k < kBits; ++k)
      v[k] = detail::kSobolMinit[j][k] << (31 - k);
    for (unsigned k = s; k < kBits; ++k) {
      std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
      for (unsigned i = 1; i < s; ++i)
        if ((poly >> (s - i)) & 1u) value ^= v[k - i];
      v[k] = value;
    }
  }

  std::size_t d_;
  std::size_t index_ = 0;
  std::vector<std::uint32_t> direction_;
  std::vector<std::uint32_t> state_;
  std::vector<std::uint32_t> shift_;
};

// First r Sobol points (zero point skipped). Prefixes are stable: sobol(r', d)
// equals the first r' rows of sobol(r, d) under the same scramble.
inline DesignPointSet sobol(std::size_t r, std::size_t d,
                            Scramble scramble = Scramble::none,
                            std::uint64_t scramble_seed = 0) {
  if (r < 1 || r > kSobolMaxPoints) throw UsageError("sobol: r out of range");
  SobolSequence seq(d, scramble, scramble_seed);
  DesignPointSet set;
  set.r = r;
  set.d = d;
  set.points = Matrix(r, d);
  set.generator_tag = scramble == Scramble::none ? "sobol-joe-kuo"
                                                 : "sobol-joe-kuo-shifted";
  for (std::size_t i = 0; i < r; ++i) {
    const auto p = seq.next();
    for (std::size_t j = 0; j < d; ++j) set.points(i, j) = p[j];
  }
  return set;
}

// i.i.d. uniform points; baseline for discrepancy comparisons.
inline DesignPointSet random_uniform_design(std::size_t r, std::size_t d,
                                            RngStream& rng) {
  if (r < 1) throw UsageError("random_uniform_design: r out of range");
  DesignPointSet set;
  set.r = r;
  set.d = d;
  set.points = Matrix(r, d);
  set.generator_tag = "random-uniform";
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) set.points(i, j) = rng.uniform01();
  return set;
}

}  // namespace spartan
