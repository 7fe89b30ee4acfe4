#pragma once

// Number-theoretic and symbolic primitives shared by all seven schemes.
// Everything here is a pure function of its inputs.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "tmis/bigint.hpp"
#include "tmis/rng.hpp"

namespace tmis::crypto {

// ---------------------------------------------------------------------------
// Hashing

inline constexpr std::size_t kDefaultDigestWidth = 32;

class Digest {
 public:
  explicit Digest(Bytes bytes) : bytes_(std::move(bytes)) {}

  const Bytes& bytes() const noexcept { return bytes_; }
  std::size_t width() const noexcept { return bytes_.size(); }
  BigInt to_int() const { return from_bytes(bytes_); }

  friend bool operator==(const Digest&, const Digest&) = default;

 private:
  Bytes bytes_;
};

/// One argument of h(.). Byte strings and non-negative integers are tagged
/// differently so that "7" and 7 never collide.
class HashArg {
 public:
  HashArg(std::string_view text) : value_(Bytes(text.begin(), text.end())) {}
  HashArg(const char* text) : HashArg(std::string_view(text)) {}
  HashArg(const std::string& text) : HashArg(std::string_view(text)) {}
  HashArg(Bytes bytes) : value_(std::move(bytes)) {}
  HashArg(BigInt value) : value_(std::move(value)) {}
  HashArg(int value) : value_(BigInt(value)) {}
  HashArg(unsigned value) : value_(BigInt(value)) {}
  HashArg(long value) : value_(BigInt(value)) {}
  HashArg(unsigned long value) : value_(BigInt(value)) {}
  HashArg(unsigned long long value) : value_(BigInt(value)) {}
  HashArg(const Digest& digest) : value_(digest.to_int()) {}
  /// Unevaluated BigInt arithmetic such as `a ^ b`.
  template <class Expr>
    requires(!std::is_arithmetic_v<Expr> && !std::is_same_v<Expr, BigInt> &&
             !std::is_convertible_v<Expr, std::string_view> && std::is_constructible_v<BigInt, const Expr&>)
  HashArg(const Expr& expr) : value_(BigInt(expr)) {}

  /// Tag byte, 4-byte big-endian length, payload.
  void append_encoding(Bytes& out) const;

 private:
  std::variant<Bytes, BigInt> value_;
};

/// SHA-256 over the length-prefixed encoding of `args`, truncated to `width`
/// octets (width <= 32).
Digest hash(std::span<const HashArg> args, std::size_t width = kDefaultDigestWidth);
Digest hash(std::initializer_list<HashArg> args, std::size_t width = kDefaultDigestWidth);

/// Digest read as a big-endian integer and reduced mod `modulus`.
BigInt hash_to_int(const Digest& digest, const BigInt& modulus);

// ---------------------------------------------------------------------------
// Modular arithmetic

/// Non-negative residue of `value` mod `m`.
BigInt mod(const BigInt& value, const BigInt& m);
BigInt mod_exp(const BigInt& base, const BigInt& exp, const BigInt& m);
BigInt mod_inv(const BigInt& a, const BigInt& m);
BigInt gcd(const BigInt& a, const BigInt& b);

/// Miller-Rabin with trial division by small primes first.
bool is_probable_prime(const BigInt& n, Rng& rng, int rounds = 32);
/// Prime with exactly `bits` bits (top bit set).
BigInt random_prime(unsigned bits, Rng& rng);

// ---------------------------------------------------------------------------
// Diffie-Hellman subgroup of a safe prime

struct DhParams {
  BigInt p;  // safe prime, p = 2q + 1
  BigInt q;  // prime order of the subgroup generated by g
  BigInt g;
};

bool is_valid(const DhParams& params);
/// Searches for a safe prime with a `q_bits`-bit q, deterministic in `seed`.
DhParams generate_dh_params(unsigned q_bits, std::uint64_t seed);
/// Fixed 128-bit safe-prime group used by default (g = 4 generates the q-subgroup).
const DhParams& default_dh_params();

// ---------------------------------------------------------------------------
// RSA

struct RsaKeys {
  BigInt n;
  BigInt e;
  BigInt d;
  BigInt p;
  BigInt q;
};

bool is_valid(const RsaKeys& keys);
/// Two distinct `prime_bits`-bit primes; e is the smallest prime in
/// {65537, 3, 5, 7, ...} coprime to (p-1)(q-1) and below it.
RsaKeys rsa_keygen(unsigned prime_bits, std::uint64_t seed);
/// x^exponent mod n; throws OutOfRange unless 0 <= x < n.
BigInt rsa_apply(const BigInt& x, const BigInt& exponent, const BigInt& n);

// ---------------------------------------------------------------------------
// Rabin

struct RabinKeys {
  BigInt n;
  BigInt p;  // p = 3 (mod 4)
  BigInt q;  // q = 3 (mod 4)
};

bool is_valid(const RabinKeys& keys);
RabinKeys rabin_keygen(unsigned prime_bits, std::uint64_t seed);
BigInt rabin_square(const BigInt& m, const BigInt& n);
/// The square roots of c mod n, ascending. Four values whenever gcd(c, n) = 1.
/// Throws NonResidue if c is not a square mod p or mod q.
std::vector<BigInt> rabin_roots(const BigInt& c, const RabinKeys& keys);

// ---------------------------------------------------------------------------
// Short Weierstrass curves over F_p

struct EcCurve {
  BigInt a;
  BigInt b;
  BigInt p;

  friend bool operator==(const EcCurve&, const EcCurve&) = default;
};

struct EcPoint {
  BigInt x;
  BigInt y;
  bool infinity = false;

  static EcPoint identity() { return EcPoint{0, 0, true}; }

  friend bool operator==(const EcPoint&, const EcPoint&) = default;
};

struct EcParams {
  EcCurve curve;
  EcPoint base;         // P
  BigInt order;         // n with n*P = O
  EcPoint public_point; // Y = s*P
};

bool on_curve(const EcPoint& point, const EcCurve& curve);
EcPoint ec_neg(const EcPoint& point, const EcCurve& curve);
/// Affine group law. Throws PointNotOnCurve for inputs off the curve.
EcPoint ec_add(const EcPoint& lhs, const EcPoint& rhs, const EcCurve& curve);
/// Double-and-add; k must be non-negative.
EcPoint ec_mul(const BigInt& k, const EcPoint& point, const EcCurve& curve);

inline EcPoint ec_add(const EcPoint& lhs, const EcPoint& rhs, const EcParams& params) {
  return ec_add(lhs, rhs, params.curve);
}
inline EcPoint ec_mul(const BigInt& k, const EcPoint& point, const EcParams& params) {
  return ec_mul(k, point, params.curve);
}

/// Builds EcParams with Y = s*P after checking the curve, the base point and
/// its order.
EcParams make_ec_params(const EcCurve& curve, const EcPoint& base, const BigInt& order,
                        const BigInt& server_scalar);
bool is_valid(const EcParams& params);

/// y^2 = x^3 + 2x + 2 over F_17 with P = (5, 1); the group has 19 points.
EcCurve toy_curve();
EcPoint toy_base_point();
inline constexpr unsigned kToyCurveOrder = 19;

// ---------------------------------------------------------------------------
// Fixed-width packing of "a || b || c" inside an exponentiation

struct PackField {
  std::string tag;
  unsigned width;  // bits
};

class PackLayout {
 public:
  PackLayout(std::initializer_list<PackField> fields) : fields_(fields) {}
  explicit PackLayout(std::vector<PackField> fields) : fields_(std::move(fields)) {}

  const std::vector<PackField>& fields() const noexcept { return fields_; }
  unsigned total_width() const;
  std::size_t index_of(std::string_view tag) const;

 private:
  std::vector<PackField> fields_;
};

class PackedPlaintext {
 public:
  /// Throws PackingOverflow if a value does not fit its field.
  PackedPlaintext(PackLayout layout, std::vector<BigInt> values);

  const PackLayout& layout() const noexcept { return layout_; }
  const std::vector<BigInt>& values() const noexcept { return values_; }
  const BigInt& get(std::string_view tag) const;
  unsigned total_width() const { return layout_.total_width(); }

  /// First field in the most significant position.
  BigInt encode() const;
  /// As encode(), but throws PackingOverflow unless total_width < bits(modulus) - 8.
  BigInt encode_for(const BigInt& modulus) const;
  /// Throws OutOfRange if `packed` has bits above the layout width.
  static PackedPlaintext decode(const PackLayout& layout, const BigInt& packed);

  friend bool operator==(const PackedPlaintext& a, const PackedPlaintext& b) {
    return a.encode() == b.encode() && a.layout_.total_width() == b.layout_.total_width();
  }

 private:
  PackLayout layout_;
  std::vector<BigInt> values_;
};

// ---------------------------------------------------------------------------
// Deterministic authenticated cipher (SIV style, HMAC-SHA-256 based)

inline constexpr std::size_t kSymTagWidth = 16;

Bytes sym_encrypt(const Bytes& key, const PackedPlaintext& plaintext);
/// Throws DecryptFailure when the embedded tag does not verify.
PackedPlaintext sym_decrypt(const Bytes& key, const Bytes& ciphertext, const PackLayout& layout);

}  // namespace tmis::crypto
