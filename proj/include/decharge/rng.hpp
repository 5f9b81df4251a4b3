#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace decharge {

/// Stream tags for derive_seed. Values are part of the reproducibility contract.
enum class SeedTag : std::uint64_t {
  kDay = 1,
  kWindow = 2,
  kRepetition = 3,
  kSelfish = 4,
  kOutage = 5,
  kRequests = 6,
  kHistory = 7,
  kBaseline = 8,
  kStations = 9,
  kSweepCell = 10,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Child seed for (parent, tag, index). Pure and order independent, so any
/// day/window/repetition can be replayed in isolation.
std::uint64_t derive_seed(std::uint64_t parent, SeedTag tag, std::uint64_t index = 0) noexcept;

/// mt19937_64 with distribution code owned here, so sampled values do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n); n must be > 0.
  std::size_t index(std::size_t n);
  /// Index sampled proportionally to nonnegative weights with positive sum.
  std::size_t weighted(std::span<const double> weights);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace decharge
