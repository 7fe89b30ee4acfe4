#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

const crypto::PackLayout& login_layout() {
  static const crypto::PackLayout layout{
      {"ID", kIdentityBits}, {"h_1", kHashFieldBits}, {"r_U", kNonceBits}, {"SN", kCounterBits}};
  return layout;
}

class LeeLiuSuite final : public SchemeSuite {
 public:
  explicit LeeLiuSuite(crypto::RsaKeys keys) : keys_(std::move(keys)) {
    meta_.card_stores_identity = true;
    meta_.password_slot = "B";
  }

  SchemeId id() const override { return SchemeId::LeeLiu2013; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"n", keys_.n}, {"e", keys_.e}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"d", keys_.d}}, {}}; }

  // B masks W itself (not h(W)) so that the login's H = B xor W recovers h(ID xor d).
  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    BigInt n = ctx.rng.bits(32);
    BigInt w = ctx.meter.h({pw.text(), n});
    BigInt b = ctx.meter.h({id.as_int() ^ server.secret("d")}) ^ w;
    server.add_account(new_account(id));
    return SmartCard{this->id(),
                     {{"n", keys_.n}, {"e", keys_.e}, {"ID", id.as_int()}, {"B", b}, {"N", n}, {"SN", BigInt(0)}}};
  }

  Message login_begin(SmartCard& card, const Identity&, const Password& pw_input,
                      PhaseContext& ctx) const override {
    BigInt sn = card.integer("SN") + 1;
    card.slots["SN"] = sn;
    BigInt r_u = ctx.rng.bits(kNonceBits);
    BigInt w = ctx.meter.h({pw_input.text(), card.integer("N")});
    BigInt h = card.integer("B") ^ w;
    BigInt h_1 = ctx.meter.h({h, r_u, sn});
    const BigInt& id = card.integer("ID");
    crypto::PackedPlaintext block(login_layout(), {id, low_bits(h_1, kHashFieldBits), r_u, sn});
    const BigInt& n = card.integer("n");
    BigInt x = ctx.meter.pow(block.encode_for(n), card.integer("e"), n);
    ctx.scratch["r_U"] = r_u;
    ctx.scratch["SN"] = sn;
    return message("M_1", Role::User, Role::Server, {{"X", x}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* x = int_field(login, "X");
    if (x == nullptr) return Reject{"X"};
    auto opened = rsa(ctx, *x, server.secret("d"), keys_.n);
    if (!opened || bit_length(*opened) > login_layout().total_width()) return Reject{"X"};
    auto block = crypto::PackedPlaintext::decode(login_layout(), *opened);
    const BigInt& id = block.get("ID");
    const BigInt& r_u = block.get("r_U");
    const BigInt& sn = block.get("SN");
    if (!registered(server, id)) return Reject{"ID"};

    BigInt expected = ctx.meter.h({ctx.meter.h({id ^ server.secret("d")}), r_u, sn});
    auto& account = server.account(static_cast<std::uint32_t>(id));
    if (sn <= account.sn_watermark) return Reject{"SN"};
    if (low_bits(expected, kHashFieldBits) != block.get("h_1")) return Reject{"h_1"};
    server.raise_watermark(account.identity, static_cast<std::uint64_t>(sn));

    BigInt r_s = ctx.rng.bits(kNonceBits);
    BigInt h_2 = ctx.meter.h({id, r_u, r_s, sn});
    ctx.scratch["ID"] = id;
    ctx.scratch["r_U'"] = r_u;
    ctx.scratch["r_S"] = r_s;
    ctx.scratch["SN'"] = sn;
    return ServerReply{message("M_2", Role::Server, Role::User, {{"h_2", h_2}, {"r_S^r_U", r_s ^ r_u}}),
                       std::nullopt, false};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* h_2 = int_field(reply, "h_2");
    const BigInt* masked = int_field(reply, "r_S^r_U");
    if (h_2 == nullptr || masked == nullptr) return Reject{"h_2"};
    const BigInt& id = card.integer("ID");
    const BigInt& r_u = ctx.scratch_int("r_U");
    const BigInt& sn = ctx.scratch_int("SN");
    BigInt r_s = *masked ^ r_u;
    if (ctx.meter.h({id, r_u, r_s, sn}) != *h_2) return Reject{"h_2"};
    BigInt sk = ctx.meter.h({id, r_s, r_u, sn});
    BigInt h_3 = ctx.meter.h({sk});
    return UserReply{message("M_3", Role::User, Role::Server, {{"h_3", h_3}}), sk};
  }

  ServerFinal server_finalize(ServerState&, const Message& confirm, PhaseContext& ctx) const override {
    if (!ctx.scratch.contains("r_S")) return Reject{"h_3"};
    const BigInt* h_3 = int_field(confirm, "h_3");
    BigInt sk = ctx.meter.h(
        {ctx.scratch_int("ID"), ctx.scratch_int("r_S"), ctx.scratch_int("r_U'"), ctx.scratch_int("SN'")});
    if (h_3 == nullptr || ctx.meter.h({sk}) != *h_3) return Reject{"h_3"};
    return ServerAccept{sk};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    const BigInt& n = card.integer("N");
    BigInt w = ctx.meter.h({old_pw.text(), n});
    BigInt w_new = ctx.meter.h({new_pw.text(), n});
    card.slots["B"] = card.integer("B") ^ w ^ w_new;
  }

 private:
  crypto::RsaKeys keys_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_lee_liu(const crypto::RsaKeys& keys) {
  require_rsa(keys, login_layout().total_width(), "leeliu2013");
  return std::make_shared<LeeLiuSuite>(keys);
}

}  // namespace tmis::schemes
