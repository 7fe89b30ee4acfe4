#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

const crypto::PackLayout& login_layout() {
  static const crypto::PackLayout layout{{"h_1", kHashFieldBits}, {"r_U", kNonceBits}};
  return layout;
}

class ZhuSuite final : public SchemeSuite {
 public:
  explicit ZhuSuite(crypto::RsaKeys keys) : keys_(std::move(keys)) {
    meta_.defines_session_key = false;
    meta_.card_stores_identity = true;
    meta_.password_slot = "B";
  }

  SchemeId id() const override { return SchemeId::Zhu2012; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"n", keys_.n}, {"e", keys_.e}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"d", keys_.d}}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    BigInt n = ctx.rng.bits(32);
    BigInt w = ctx.meter.h({pw.text(), n});
    BigInt b = ctx.meter.h({id.as_int() ^ server.secret("d")}) ^ ctx.meter.h({w});
    server.add_account(new_account(id));
    return SmartCard{this->id(), {{"n", keys_.n}, {"e", keys_.e}, {"ID", id.as_int()}, {"B", b}, {"N", n}}};
  }

  Message login_begin(SmartCard& card, const Identity&, const Password& pw_input,
                      PhaseContext& ctx) const override {
    BigInt r_u = ctx.rng.bits(kNonceBits);
    BigInt w = ctx.meter.h({pw_input.text(), card.integer("N")});
    BigInt b_prime = card.integer("B") ^ ctx.meter.h({w});
    BigInt h_1 = ctx.meter.h({b_prime, r_u});
    crypto::PackedPlaintext block(login_layout(), {low_bits(h_1, kHashFieldBits), r_u});
    const BigInt& n = card.integer("n");
    BigInt x = ctx.meter.pow(block.encode_for(n), card.integer("e"), n);
    ctx.scratch["r_U"] = r_u;
    ctx.scratch["h_1"] = h_1;
    return message("M_1", Role::User, Role::Server, {{"ID", card.integer("ID")}, {"X", x}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* id = int_field(login, "ID");
    if (id == nullptr || !registered(server, *id)) return Reject{"ID"};
    const BigInt* x = int_field(login, "X");
    if (x == nullptr) return Reject{"X"};
    auto opened = rsa(ctx, *x, server.secret("d"), keys_.n);
    if (!opened || bit_length(*opened) > login_layout().total_width()) return Reject{"X"};
    auto block = crypto::PackedPlaintext::decode(login_layout(), *opened);
    const BigInt& r_u = block.get("r_U");

    BigInt expected = ctx.meter.h({ctx.meter.h({BigInt(*id ^ server.secret("d"))}), r_u});
    if (low_bits(expected, kHashFieldBits) != block.get("h_1")) return Reject{"h_1"};

    BigInt r_s = ctx.rng.bits(kNonceBits);
    BigInt h_2 = ctx.meter.h({*id, r_u, r_s});
    ctx.scratch["ID"] = *id;
    ctx.scratch["r_U'"] = r_u;
    ctx.scratch["r_S"] = r_s;
    return ServerReply{message("M_2", Role::Server, Role::User, {{"h_2", h_2}, {"r_S", r_s}}), std::nullopt, false};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* h_2 = int_field(reply, "h_2");
    const BigInt* r_s = int_field(reply, "r_S");
    if (h_2 == nullptr || r_s == nullptr) return Reject{"h_2"};
    const BigInt& id = card.integer("ID");
    const BigInt& r_u = ctx.scratch_int("r_U");
    if (ctx.meter.h({id, r_u, *r_s}) != *h_2) return Reject{"h_2"};
    BigInt h_3 = ctx.meter.h({id, *r_s, r_u});
    return UserReply{message("M_3", Role::User, Role::Server, {{"h_3", h_3}}), std::nullopt};
  }

  ServerFinal server_finalize(ServerState&, const Message& confirm, PhaseContext& ctx) const override {
    if (!ctx.scratch.contains("r_S")) return Reject{"h_3"};
    const BigInt* h_3 = int_field(confirm, "h_3");
    BigInt expected = ctx.meter.h({ctx.scratch_int("ID"), ctx.scratch_int("r_S"), ctx.scratch_int("r_U'")});
    if (h_3 == nullptr || expected != *h_3) return Reject{"h_3"};
    return ServerAccept{std::nullopt};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    const BigInt& n = card.integer("N");
    BigInt w = ctx.meter.h({old_pw.text(), n});
    BigInt w_new = ctx.meter.h({new_pw.text(), n});
    card.slots["B"] = card.integer("B") ^ ctx.meter.h({w}) ^ ctx.meter.h({w_new});
  }

 private:
  crypto::RsaKeys keys_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_zhu(const crypto::RsaKeys& keys) {
  require_rsa(keys, login_layout().total_width(), "zhu2012");
  return std::make_shared<ZhuSuite>(keys);
}

}  // namespace tmis::schemes
