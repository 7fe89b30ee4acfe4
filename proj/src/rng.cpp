#include "tmis/rng.hpp"

#include "tmis/errors.hpp"

namespace tmis {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  // FNV-1a over the stream label, folded into the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(seed ^ mix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

BigInt Rng::bits(unsigned bits) {
  BigInt out = 0;
  unsigned produced = 0;
  while (produced < bits) {
    out <<= 64;
    out |= engine_();
    produced += 64;
  }
  return produced == bits ? out : (out >> (produced - bits));
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw Error(ErrorCode::OutOfRange, "Rng::below needs a positive bound");
  unsigned width = bit_length(bound);
  for (;;) {
    BigInt candidate = bits(width);
    if (candidate < bound) return candidate;
  }
}

BigInt Rng::between(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw Error(ErrorCode::OutOfRange, "Rng::between with empty range");
  return lo + below(hi - lo + 1);
}

}  // namespace tmis
