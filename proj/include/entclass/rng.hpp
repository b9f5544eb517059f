// Seeded randomness with platform-independent output.
//
// std::mt19937_64's raw stream is fixed by the standard, but the standard
// distributions are not, so every conversion to a real, a bounded integer
// or a normal deviate is done here.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace entclass {

/// Mixes a sequence of words into one seed (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// [0, 1) with 53 random bits.
  double uniform();
  /// (0, 1], the half-open interval used for nonzero coefficients.
  double uniform_open_closed() { return 1.0 - uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace entclass
