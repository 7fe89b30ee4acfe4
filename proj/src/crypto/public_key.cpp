#include <algorithm>

#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

namespace {

bool is_prime_checked(const BigInt& n) {
  // Validation runs with a fixed stream so results do not depend on callers.
  Rng rng(0x7e57ab1e);
  return is_probable_prime(n, rng, 40);
}

BigInt pick_public_exponent(const BigInt& phi) {
  if (BigInt(65537) < phi && gcd(65537, phi) == 1) return 65537;
  Rng rng(1);
  for (BigInt e = 3; e < phi; e += 2) {
    if (is_probable_prime(e, rng) && gcd(e, phi) == 1) return e;
  }
  throw Error(ErrorCode::InvalidParameters, "no public exponent below phi");
}

BigInt prime_3_mod_4(unsigned bits, Rng& rng) {
  for (;;) {
    BigInt p = random_prime(bits, rng);
    if (p % 4 == 3) return p;
  }
}

}  // namespace

// --- Diffie-Hellman ---------------------------------------------------------

bool is_valid(const DhParams& params) {
  if (params.p != 2 * params.q + 1) return false;
  if (!is_prime_checked(params.q) || !is_prime_checked(params.p)) return false;
  BigInt g = mod(params.g, params.p);
  if (g == 1 || g == 0) return false;
  return mod_exp(g, params.q, params.p) == 1;
}

DhParams generate_dh_params(unsigned q_bits, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "dh"));
  for (;;) {
    BigInt q = random_prime(q_bits, rng);
    BigInt p = 2 * q + 1;
    if (!is_probable_prime(p, rng)) continue;
    for (;;) {
      BigInt h = rng.between(2, p - 2);
      BigInt g = (h * h) % p;
      if (g != 1) return DhParams{p, q, g};
    }
  }
}

const DhParams& default_dh_params() {
  static const DhParams params{
      BigInt("0xf3bb0c35a5ccd51afd5f80cfba4c7437"),
      BigInt("0x79dd861ad2e66a8d7eafc067dd263a1b"),
      BigInt(4),
  };
  return params;
}

// --- RSA --------------------------------------------------------------------

bool is_valid(const RsaKeys& keys) {
  if (keys.p == keys.q || keys.n != keys.p * keys.q) return false;
  if (!is_prime_checked(keys.p) || !is_prime_checked(keys.q)) return false;
  BigInt phi = (keys.p - 1) * (keys.q - 1);
  if (gcd(keys.e, phi) != 1) return false;
  return mod(keys.e * keys.d, phi) == 1;
}

RsaKeys rsa_keygen(unsigned prime_bits, std::uint64_t seed) {
  if (prime_bits < 4) throw Error(ErrorCode::InvalidParameters, "RSA primes need at least 4 bits");
  Rng rng(derive_seed(seed, "rsa"));
  BigInt p = random_prime(prime_bits, rng);
  BigInt q;
  do {
    q = random_prime(prime_bits, rng);
  } while (q == p);
  BigInt phi = (p - 1) * (q - 1);
  BigInt e = pick_public_exponent(phi);
  return RsaKeys{p * q, e, mod_inv(e, phi), p, q};
}

BigInt rsa_apply(const BigInt& x, const BigInt& exponent, const BigInt& n) {
  if (x < 0 || x >= n) throw Error(ErrorCode::OutOfRange, "RSA input must lie in [0, n)");
  return mod_exp(x, exponent, n);
}

// --- Rabin ------------------------------------------------------------------

bool is_valid(const RabinKeys& keys) {
  if (keys.p == keys.q || keys.n != keys.p * keys.q) return false;
  if (keys.p % 4 != 3 || keys.q % 4 != 3) return false;
  return is_prime_checked(keys.p) && is_prime_checked(keys.q);
}

RabinKeys rabin_keygen(unsigned prime_bits, std::uint64_t seed) {
  if (prime_bits < 4) throw Error(ErrorCode::InvalidParameters, "Rabin primes need at least 4 bits");
  Rng rng(derive_seed(seed, "rabin"));
  BigInt p = prime_3_mod_4(prime_bits, rng);
  BigInt q;
  do {
    q = prime_3_mod_4(prime_bits, rng);
  } while (q == p);
  return RabinKeys{p * q, p, q};
}

BigInt rabin_square(const BigInt& m, const BigInt& n) {
  if (m < 0 || m >= n) throw Error(ErrorCode::OutOfRange, "Rabin plaintext must lie in [0, n)");
  return (m * m) % n;
}

std::vector<BigInt> rabin_roots(const BigInt& c, const RabinKeys& keys) {
  if (c < 0 || c >= keys.n) throw Error(ErrorCode::OutOfRange, "Rabin ciphertext must lie in [0, n)");
  const BigInt& p = keys.p;
  const BigInt& q = keys.q;
  BigInt mp = mod_exp(c, (p + 1) / 4, p);
  BigInt mq = mod_exp(c, (q + 1) / 4, q);
  if ((mp * mp) % p != c % p || (mq * mq) % q != c % q) {
    throw Error(ErrorCode::NonResidue, "ciphertext has no square root mod p or q");
  }
  // CRT coefficients: x = a (mod p), x = b (mod q).
  BigInt cp = q * mod_inv(q, p);
  BigInt cq = p * mod_inv(p, q);
  std::vector<BigInt> roots;
  for (const BigInt& a : {mp, mod(-mp, p)}) {
    for (const BigInt& b : {mq, mod(-mq, q)}) {
      roots.push_back(mod(a * cp + b * cq, keys.n));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace tmis::crypto
