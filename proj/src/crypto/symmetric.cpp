#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>

#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

namespace {

Bytes hmac_sha256(const Bytes& key, const Bytes& message) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(), message.size(),
           out.data(), &len) == nullptr) {
    throw std::runtime_error("HMAC failed");
  }
  out.resize(len);
  return out;
}

Bytes labelled(std::string_view label, const Bytes& body) {
  Bytes out(label.begin(), label.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

// Counter-mode keystream keyed by the synthetic IV.
void apply_keystream(const Bytes& key, const Bytes& iv, Bytes& data) {
  std::size_t offset = 0;
  for (std::uint32_t counter = 0; offset < data.size(); ++counter) {
    Bytes block_input = labelled("tmis-ks", iv);
    for (int shift = 24; shift >= 0; shift -= 8) block_input.push_back(static_cast<std::uint8_t>(counter >> shift));
    Bytes block = hmac_sha256(key, block_input);
    for (std::size_t i = 0; i < block.size() && offset < data.size(); ++i, ++offset) data[offset] ^= block[i];
  }
}

std::size_t octets_for(const PackLayout& layout) { return (layout.total_width() + 7) / 8; }

}  // namespace

Bytes sym_encrypt(const Bytes& key, const PackedPlaintext& plaintext) {
  if (key.empty()) throw Error(ErrorCode::InvalidParameters, "symmetric key must be non-empty");
  Bytes body = to_bytes(plaintext.encode(), octets_for(plaintext.layout()));
  Bytes tag = hmac_sha256(key, labelled("tmis-tag", body));
  tag.resize(kSymTagWidth);
  apply_keystream(key, tag, body);
  Bytes out = tag;
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

PackedPlaintext sym_decrypt(const Bytes& key, const Bytes& ciphertext, const PackLayout& layout) {
  if (key.empty()) throw Error(ErrorCode::InvalidParameters, "symmetric key must be non-empty");
  if (ciphertext.size() != kSymTagWidth + octets_for(layout)) {
    throw Error(ErrorCode::DecryptFailure, "ciphertext length does not match layout");
  }
  Bytes tag(ciphertext.begin(), ciphertext.begin() + kSymTagWidth);
  Bytes body(ciphertext.begin() + kSymTagWidth, ciphertext.end());
  apply_keystream(key, tag, body);
  Bytes expected = hmac_sha256(key, labelled("tmis-tag", body));
  expected.resize(kSymTagWidth);
  if (!std::equal(expected.begin(), expected.end(), tag.begin())) {
    throw Error(ErrorCode::DecryptFailure, "integrity tag mismatch");
  }
  try {
    return PackedPlaintext::decode(layout, from_bytes(body));
  } catch (const Error&) {
    throw Error(ErrorCode::DecryptFailure, "plaintext does not match layout");
  }
}

}  // namespace tmis::crypto
