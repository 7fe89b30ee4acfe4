#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

const crypto::PackLayout& login_layout() {
  static const crypto::PackLayout layout{{"ID", kIdentityBits}, {"J", kHashFieldBits}, {"r_u", kNonceBits}};
  return layout;
}

class CaoZhaiSuite final : public SchemeSuite {
 public:
  explicit CaoZhaiSuite(crypto::RabinKeys keys) : keys_(std::move(keys)) {
    meta_.change_needs_server = true;
    meta_.supports_revocation = true;
    meta_.password_slot = "L";
  }

  SchemeId id() const override { return SchemeId::CaoZhai2013; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override { return {{"n", keys_.n}}; }

  ServerState make_server() const override {
    return ServerState{id(), {{"p", keys_.p}, {"q", keys_.q}}, {}};
  }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    server.add_account(new_account(id));
    return issue_card(server, id, pw, ctx);
  }

  Message login_begin(SmartCard& card, const Identity& id_input, const Password& pw_input,
                      PhaseContext& ctx) const override {
    BigInt r_u = ctx.rng.bits(kNonceBits);
    BigInt j = card.integer("L") ^ ctx.meter.h({card.integer("b"), pw_input.text()});
    crypto::PackedPlaintext block(login_layout(), {id_input.as_int(), low_bits(j, kHashFieldBits), r_u});
    BigInt aid = ctx.meter.pow(block.encode_for(card.integer("n")), 2, card.integer("n"));
    ctx.scratch["r_u"] = r_u;
    return message("M_1", Role::User, Role::Server, {{"AID", aid}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* aid = int_field(login, "AID");
    if (aid == nullptr || *aid < 0 || *aid >= keys_.n) return Reject{"AID"};
    crypto::RabinKeys keys{keys_.n, server.secret("p"), server.secret("q")};
    std::vector<BigInt> roots;
    try {
      roots = crypto::rabin_roots(*aid, keys);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonResidue) throw;
      return Reject{"AID"};
    }

    // Only the honest root fits the packing width, except with negligible probability.
    bool any_well_formed = false;
    bool any_registered = false;
    std::vector<crypto::PackedPlaintext> matches;
    for (const BigInt& root : roots) {
      if (bit_length(root) > login_layout().total_width()) continue;
      any_well_formed = true;
      auto block = crypto::PackedPlaintext::decode(login_layout(), root);
      const BigInt& id = block.get("ID");
      if (!registered(server, id)) continue;
      any_registered = true;
      if (low_bits(account_j(server, id, ctx), kHashFieldBits) == block.get("J")) matches.push_back(block);
    }
    if (!any_well_formed) return Reject{"AID"};
    if (!any_registered) return Reject{"ID"};
    if (matches.empty()) return Reject{"J"};
    if (matches.size() > 1) throw Error(ErrorCode::DecodeAmbiguous, "several AID roots verify");

    const BigInt& r_u = matches.front().get("r_u");
    BigInt r_s = ctx.rng.bits(kNonceBits);
    BigInt k_s = ctx.meter.h({r_u, r_s});
    BigInt c_s = ctx.meter.h({k_s, r_s});
    ctx.scratch["r_u'"] = r_u;
    ctx.scratch["r_s"] = r_s;
    ctx.scratch["K_s"] = k_s;
    return ServerReply{message("M_2", Role::Server, Role::User, {{"r_s", r_s}, {"C_s", c_s}}), std::nullopt, false};
  }

  UserStep user_finalize(const SmartCard&, const Message& reply, PhaseContext& ctx) const override {
    auto k_u = verify_reply(reply, ctx);
    if (!k_u) return Reject{"C_s"};
    BigInt c_u = ctx.meter.h({*int_field(reply, "r_s"), *k_u});
    return UserReply{message("M_3", Role::User, Role::Server, {{"C_u", c_u}}), *k_u};
  }

  ServerFinal server_finalize(ServerState&, const Message& confirm, PhaseContext& ctx) const override {
    if (!ctx.scratch.contains("K_s")) return Reject{"C_u"};
    const BigInt* c_u = int_field(confirm, "C_u");
    const BigInt& k_s = ctx.scratch_int("K_s");
    if (c_u == nullptr || ctx.meter.h({ctx.scratch_int("r_s"), k_s}) != *c_u) return Reject{"C_u"};
    return ServerAccept{k_s};
  }

  std::optional<Reject> change_password_confirm(SmartCard& card, const Message& reply, const Password& old_pw,
                                                const Password& new_pw, PhaseContext& ctx) const override {
    if (!verify_reply(reply, ctx)) return Reject{"C_s"};
    const BigInt& b = card.integer("b");
    card.slots["L"] = card.integer("L") ^ ctx.meter.h({b, old_pw.text()}) ^ ctx.meter.h({b, new_pw.text()});
    return std::nullopt;
  }

  SmartCard revoke(ServerState& server, const Identity& id, const Password& pw, PhaseContext& ctx) const override {
    server.account(id.value()).counter_n += 1;
    return issue_card(server, id, pw, ctx);
  }

 private:
  BigInt account_j(const ServerState& server, const BigInt& id, PhaseContext& ctx) const {
    const auto& account = server.account(static_cast<std::uint32_t>(id));
    return ctx.meter.h({server.secret("p"), server.secret("q"), id, account.counter_n});
  }

  SmartCard issue_card(const ServerState& server, const Identity& id, const Password& pw, PhaseContext& ctx) const {
    BigInt b = ctx.rng.bits(32);
    BigInt w = ctx.meter.h({b, pw.text()});
    BigInt l = account_j(server, id.as_int(), ctx) ^ w;
    return SmartCard{this->id(), {{"L", l}, {"n", keys_.n}, {"b", b}}};
  }

  // K_u when C_s verifies.
  static std::optional<BigInt> verify_reply(const Message& reply, PhaseContext& ctx) {
    const BigInt* r_s = int_field(reply, "r_s");
    const BigInt* c_s = int_field(reply, "C_s");
    if (r_s == nullptr || c_s == nullptr) return std::nullopt;
    BigInt k_u = ctx.meter.h({ctx.scratch_int("r_u"), *r_s});
    if (ctx.meter.h({k_u, *r_s}) != *c_s) return std::nullopt;
    return k_u;
  }

  crypto::RabinKeys keys_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_cao_zhai(const crypto::RabinKeys& keys) {
  if (!crypto::is_valid(keys)) throw Error(ErrorCode::InvalidParameters, "caozhai2013: invalid Rabin keys");
  if (login_layout().total_width() + 8 >= bit_length(keys.n)) {
    throw Error(ErrorCode::InvalidParameters, "caozhai2013: modulus too small for the login block");
  }
  return std::make_shared<CaoZhaiSuite>(keys);
}

}  // namespace tmis::schemes
