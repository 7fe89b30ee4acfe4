#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "tmis/bigint.hpp"

namespace tmis {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator. Identical seeds give identical sequences on every
/// platform (mt19937_64 is fully specified by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer with exactly `bits` random bits (top bit not forced).
  BigInt bits(unsigned bits);
  /// Uniform in [0, bound).
  BigInt below(const BigInt& bound);
  /// Uniform in [lo, hi].
  BigInt between(const BigInt& lo, const BigInt& hi);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace tmis
