#pragma once

// Helpers shared by the scheme bindings. Not part of the public interface.

#include <optional>
#include <string>

#include "tmis/protocol.hpp"

namespace tmis::schemes::detail {

using protocol::FieldValue;
using protocol::Message;
using protocol::PhaseContext;
using protocol::Reject;
using protocol::Role;

inline BigInt low_bits(const BigInt& value, unsigned bits) { return truncate_bits(value, bits); }

inline Message message(std::string name, Role from, Role to,
                       std::vector<std::pair<std::string, FieldValue>> fields) {
  Message m;
  m.name = std::move(name);
  m.sender = from;
  m.receiver = to;
  m.fields = std::move(fields);
  return m;
}

inline BigInt timestamp(const PhaseContext& ctx) { return BigInt(ctx.clock.now()); }

/// Receive-side freshness: now - stamp <= delta_t. Stamps from the future
/// also count as fresh.
inline bool fresh(const PhaseContext& ctx, const BigInt& stamp) {
  if (stamp < 0) return false;
  if (stamp > BigInt(ctx.clock.now())) return true;
  return ctx.clock.is_fresh(static_cast<protocol::Tick>(stamp));
}

/// Reads a field the adversary may have removed or retyped; empty if unusable.
inline const BigInt* int_field(const Message& m, std::string_view name) {
  for (const auto& [key, value] : m.fields) {
    if (key == name) return std::get_if<BigInt>(&value);
  }
  return nullptr;
}

inline const crypto::EcPoint* point_field(const Message& m, std::string_view name) {
  for (const auto& [key, value] : m.fields) {
    if (key == name) return std::get_if<crypto::EcPoint>(&value);
  }
  return nullptr;
}

inline protocol::AccountRecord new_account(const protocol::Identity& id) {
  protocol::AccountRecord record;
  record.identity = id.value();
  return record;
}

/// "Checks the validity of ID": membership in the account table.
inline bool registered(const protocol::ServerState& server, const BigInt& id) {
  return id > 0 && id < (BigInt(1) << protocol::kIdentityBits) &&
         server.has_account(static_cast<std::uint32_t>(id));
}

/// RSA operation metered as one exponentiation; empty when x is not in [0, n).
inline std::optional<BigInt> rsa(PhaseContext& ctx, const BigInt& x, const BigInt& exponent, const BigInt& n) {
  if (x < 0 || x >= n) return std::nullopt;
  return ctx.meter.pow(x, exponent, n);
}

/// Validates RSA keys and checks that a `payload_bits` packing fits below n.
void require_rsa(const crypto::RsaKeys& keys, unsigned payload_bits, std::string_view scheme);

}  // namespace tmis::schemes::detail
