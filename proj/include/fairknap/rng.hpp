#pragma once

#include <cstdint>
#include <random>

namespace fairknap {

// mt19937_64's output sequence is fully specified by the standard, so seeded
// runs reproduce bit-for-bit across platforms. The helpers below avoid
// std::uniform_int_distribution, whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Unbiased draw from [lo, hi], inclusive. Requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
};

/// Derives an independent stream seed from (base, index).
std::uint64_t subseed(std::uint64_t base, std::uint64_t index);

}  // namespace fairknap
