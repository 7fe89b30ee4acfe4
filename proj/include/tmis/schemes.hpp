#pragma once

// Constructors binding the protocol framework to each scheme's equations.

#include <cstdint>
#include <memory>
#include <optional>

#include "tmis/crypto.hpp"
#include "tmis/protocol.hpp"

namespace tmis::schemes {

using SuitePtr = std::shared_ptr<const protocol::SchemeSuite>;

/// Throws InvalidParameters unless the group is valid and 0 < x < q.
SuitePtr build_wei(const crypto::DhParams& params, const BigInt& x);
/// Throws InvalidParameters for invalid keys or a modulus too small for the login packing.
SuitePtr build_zhu(const crypto::RsaKeys& keys);
SuitePtr build_lee_liu(const crypto::RsaKeys& keys);
SuitePtr build_lin(const crypto::RsaKeys& keys);
SuitePtr build_cao_zhai(const crypto::RabinKeys& keys);
/// `x_secret` must be the RSA private exponent (e * X = 1 mod phi); `sym_key`
/// keys the account-table cipher E_X.
SuitePtr build_xie(const crypto::RsaKeys& keys, const BigInt& x_secret, const Bytes& sym_key);
/// Throws InvalidParameters unless params are valid and 0 < s < order.
SuitePtr build_xu(const crypto::EcParams& params, const BigInt& s);

struct SuiteOptions {
  unsigned rsa_prime_bits = 96;
  unsigned rabin_prime_bits = 96;
  std::optional<crypto::DhParams> dh;  // default_dh_params() when empty
};

/// Deterministic in `seed`: server secrets and keys are derived from it.
SuitePtr make_suite(SchemeId id, std::uint64_t seed, const SuiteOptions& options = {});

}  // namespace tmis::schemes
