#pragma once

#include <cstdint>
#include <limits>

namespace balance_lab {

/// Counter-based generator: output k is a SplitMix64 finalizer applied to
/// key + (k + 1) * golden_gamma. Streams are keyed, so per-trial streams derived
/// from (master seed, trial index) are independent of scheduling.
///
/// Bounded integers and doubles are produced here rather than through
/// <random> distributions so that sequences are identical across standard libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  /// Stream `index` of a master seed.
  static CounterRng stream(std::uint64_t master_seed, std::uint64_t index) {
    return CounterRng(derive_key(master_seed, index));
  }

  static std::uint64_t derive_key(std::uint64_t master_seed, std::uint64_t index) {
    return mix(master_seed ^ mix(index + 0x632BE59BD9B4E019ULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, .., bound - 1}; bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t product = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace balance_lab
