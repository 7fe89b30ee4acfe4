#include "tmis/schemes.hpp"

namespace tmis::schemes {

SuitePtr make_suite(SchemeId id, std::uint64_t seed, const SuiteOptions& options) {
  const std::uint64_t key_seed = derive_seed(seed, to_string(id));
  Rng rng(key_seed);
  switch (id) {
    case SchemeId::Wei2012: {
      const crypto::DhParams& params = options.dh ? *options.dh : crypto::default_dh_params();
      return build_wei(params, rng.between(1, params.q - 1));
    }
    case SchemeId::Zhu2012:
      return build_zhu(crypto::rsa_keygen(options.rsa_prime_bits, key_seed));
    case SchemeId::LeeLiu2013:
      return build_lee_liu(crypto::rsa_keygen(options.rsa_prime_bits, key_seed));
    case SchemeId::Lin2013:
      return build_lin(crypto::rsa_keygen(options.rsa_prime_bits, key_seed));
    case SchemeId::CaoZhai2013:
      return build_cao_zhai(crypto::rabin_keygen(options.rabin_prime_bits, key_seed));
    case SchemeId::Xie2013: {
      auto keys = crypto::rsa_keygen(options.rsa_prime_bits, key_seed);
      Bytes sym_key = to_bytes(rng.bits(256), 32);
      return build_xie(keys, keys.d, sym_key);
    }
    case SchemeId::Xu2014: {
      BigInt s = rng.between(1, crypto::kToyCurveOrder - 1);
      auto params = crypto::make_ec_params(crypto::toy_curve(), crypto::toy_base_point(), crypto::kToyCurveOrder, s);
      return build_xu(params, s);
    }
  }
  throw Error(ErrorCode::UnknownScheme, "unhandled scheme id");
}

}  // namespace tmis::schemes
