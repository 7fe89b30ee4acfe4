#include <array>

#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

}  // namespace

BigInt mod(const BigInt& value, const BigInt& m) {
  if (m <= 0) throw Error(ErrorCode::InvalidParameters, "modulus must be positive");
  BigInt r = value % m;
  if (r < 0) r += m;
  return r;
}

BigInt mod_exp(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (m < 2) throw Error(ErrorCode::InvalidParameters, "mod_exp needs m >= 2");
  if (exp < 0) throw Error(ErrorCode::OutOfRange, "mod_exp needs a non-negative exponent");
  BigInt result = 1;
  BigInt square = mod(base, m);
  unsigned width = bit_length(exp);
  for (unsigned i = 0; i < width; ++i) {
    if (boost::multiprecision::bit_test(exp, i)) result = (result * square) % m;
    square = (square * square) % m;
  }
  return result;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

BigInt mod_inv(const BigInt& a, const BigInt& m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameters, "mod_inv needs a positive modulus");
  if (m == 1) return 0;
  // Extended Euclid on (a mod m, m), tracking the coefficient of a only.
  BigInt r0 = mod(a, m), r1 = m;
  BigInt s0 = 1, s1 = 0;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) throw Error(ErrorCode::NotInvertible, "gcd(a, m) != 1");
  return mod(s0, m);
}

bool is_probable_prime(const BigInt& n, Rng& rng, int rounds) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (int round = 0; round < rounds; ++round) {
    BigInt a = rng.between(2, n - 2);
    BigInt x = mod_exp(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

BigInt random_prime(unsigned bits, Rng& rng) {
  if (bits < 3) throw Error(ErrorCode::InvalidParameters, "prime width must be at least 3 bits");
  BigInt top = BigInt(1) << (bits - 1);
  for (;;) {
    BigInt candidate = rng.bits(bits) | top | 1;
    if (is_probable_prime(candidate, rng)) return candidate;
  }
}

}  // namespace tmis::crypto
