#pragma once

#include <cstdint>
#include <optional>

namespace lohe {

/// Counter-based generator: the i-th draw is a SplitMix64 finalizer applied
/// to key + i·φ, so streams depend only on the seed and are identical on
/// every platform. Normal variates use Box–Muller on top of it.
///
/// Single owner. Independent streams are derived with split().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal.
  double normal();

  /// A generator whose stream is independent of this one and of every other
  /// stream id. Does not advance this generator.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace lohe
