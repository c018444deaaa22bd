#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rma/rational.hpp"

namespace rma {

inline constexpr std::uint64_t kDefaultSeed = 0xA5F00Dull;

// Deterministic sampler.  All randomness in the library flows through this
// class, and values are derived from raw engine output by explicit modular
// arithmetic rather than std:: distributions, whose outputs are not pinned
// by the standard.  Same seed, same sequence, on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform-ish integer in [lo, hi] via modular reduction.  The slight
  // modulo bias is irrelevant here (falsification and spot checks), and
  // accepting it keeps the stream platform-independent.
  long next_int(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }

  // Rational with |numerator| <= num_bound and 1 <= denominator <= den_bound.
  ExactRational next_rational(long num_bound = 64, long den_bound = 64) {
    long n = next_int(-num_bound, num_bound);
    long d = next_int(1, den_bound);
    return ExactRational(n, d);
  }

  std::vector<ExactRational> next_point(std::size_t arity, long num_bound = 64,
                                        long den_bound = 64) {
    std::vector<ExactRational> p;
    p.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i)
      p.push_back(next_rational(num_bound, den_bound));
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rma
