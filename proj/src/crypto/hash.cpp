#include <openssl/evp.h>

#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

namespace {

constexpr std::uint8_t kTagBytes = 0x01;
constexpr std::uint8_t kTagInteger = 0x02;

void append_u32(Bytes& out, std::size_t value) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(value >> shift));
}

Bytes sha256(const Bytes& message) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_Digest(message.data(), message.size(), out.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("EVP_Digest failed");
  }
  out.resize(len);
  return out;
}

}  // namespace

void HashArg::append_encoding(Bytes& out) const {
  if (const auto* raw = std::get_if<Bytes>(&value_)) {
    out.push_back(kTagBytes);
    append_u32(out, raw->size());
    out.insert(out.end(), raw->begin(), raw->end());
    return;
  }
  Bytes magnitude = to_bytes(std::get<BigInt>(value_));
  out.push_back(kTagInteger);
  append_u32(out, magnitude.size());
  out.insert(out.end(), magnitude.begin(), magnitude.end());
}

Digest hash(std::span<const HashArg> args, std::size_t width) {
  if (args.empty()) throw Error(ErrorCode::InvalidParameters, "hash needs at least one argument");
  if (width == 0 || width > 32) throw Error(ErrorCode::InvalidParameters, "digest width must be 1..32");
  Bytes encoded;
  append_u32(encoded, args.size());
  for (const auto& arg : args) arg.append_encoding(encoded);
  Bytes digest = sha256(encoded);
  digest.resize(width);
  return Digest(std::move(digest));
}

Digest hash(std::initializer_list<HashArg> args, std::size_t width) {
  return hash(std::span<const HashArg>(args.begin(), args.size()), width);
}

BigInt hash_to_int(const Digest& digest, const BigInt& modulus) {
  return mod(digest.to_int(), modulus);
}

}  // namespace tmis::crypto
