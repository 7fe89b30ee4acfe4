#include "common.hpp"

namespace tmis::schemes::detail {

void require_rsa(const crypto::RsaKeys& keys, unsigned payload_bits, std::string_view scheme) {
  if (!crypto::is_valid(keys)) {
    throw Error(ErrorCode::InvalidParameters, std::string(scheme) + ": inconsistent RSA keys");
  }
  if (payload_bits + 8 >= bit_length(keys.n)) {
    throw Error(ErrorCode::InvalidParameters,
                std::string(scheme) + ": modulus too small for a " + std::to_string(payload_bits) + "-bit login block");
  }
}

}  // namespace tmis::schemes::detail
