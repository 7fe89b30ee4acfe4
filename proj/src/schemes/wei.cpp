#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;
using crypto::mod;

class WeiSuite final : public SchemeSuite {
 public:
  WeiSuite(crypto::DhParams params, BigInt x) : params_(std::move(params)), x_(std::move(x)) {
    meta_.card_stores_identity = true;
    meta_.password_slot = "B";
  }

  SchemeId id() const override { return SchemeId::Wei2012; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"p", params_.p}, {"q", params_.q}, {"g", params_.g}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"x", x_}}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    BigInt n = ctx.rng.bits(32);
    BigInt w = ctx.meter.h({pw.text(), n});
    BigInt h_idx = id_term(server, id.as_int(), ctx);
    if (h_idx == 0) throw Error(ErrorCode::RegistrationRejected, "h(ID^x) vanishes mod q");
    BigInt b = mod(h_idx + h_q(w, ctx), params_.p);
    server.add_account(new_account(id));
    return SmartCard{this->id(), {{"ID", id.as_int()}, {"B", b}, {"N", n}, {"g", params_.g}, {"p", params_.p}}};
  }

  Message login_begin(SmartCard& card, const Identity&, const Password& pw_input,
                      PhaseContext& ctx) const override {
    const BigInt& p = card.integer("p");
    BigInt r_u = ctx.rng.between(1, params_.q - 1);
    BigInt a = ctx.meter.pow(card.integer("g"), r_u, p);
    BigInt w = ctx.meter.h({pw_input.text(), card.integer("N")});
    BigInt b_prime = mod((card.integer("B") - h_q(w, ctx)) * a, p);
    const BigInt& id = card.integer("ID");
    BigInt h_1 = ctx.meter.h({a, b_prime, id});
    ctx.scratch["r_U"] = r_u;
    ctx.scratch["A"] = a;
    ctx.scratch["B'"] = b_prime;
    return message("M_1", Role::User, Role::Server, {{"ID", id}, {"B'", b_prime}, {"h_1", h_1}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* id = int_field(login, "ID");
    if (id == nullptr || !registered(server, *id)) return Reject{"ID"};
    const BigInt* b_prime = int_field(login, "B'");
    const BigInt* h_1 = int_field(login, "h_1");
    if (b_prime == nullptr || h_1 == nullptr) return Reject{"h_1"};

    BigInt a_prime = mod(*b_prime * ctx.meter.inv(id_term(server, *id, ctx), params_.p), params_.p);
    if (ctx.meter.h({a_prime, *b_prime, *id}) != *h_1) return Reject{"h_1"};

    BigInt r_s = ctx.rng.bits(64);
    BigInt sk = ctx.meter.h({*id, a_prime, *b_prime, r_s});
    BigInt h_2 = ctx.meter.h({sk, r_s});
    ctx.scratch["ID"] = *id;
    ctx.scratch["A'"] = a_prime;
    ctx.scratch["r_S"] = r_s;
    ctx.scratch["sk"] = sk;
    return ServerReply{message("M_2", Role::Server, Role::User, {{"h_2", h_2}, {"r_S", r_s}}), sk, false};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* h_2 = int_field(reply, "h_2");
    const BigInt* r_s = int_field(reply, "r_S");
    if (h_2 == nullptr || r_s == nullptr) return Reject{"h_2"};
    const BigInt& id = card.integer("ID");
    BigInt sk = ctx.meter.h({id, ctx.scratch_int("A"), ctx.scratch_int("B'"), *r_s});
    if (ctx.meter.h({sk, *r_s}) != *h_2) return Reject{"h_2"};
    BigInt h_3 = ctx.meter.h({id, sk});
    return UserReply{message("M_3", Role::User, Role::Server, {{"h_3", h_3}}), sk};
  }

  ServerFinal server_finalize(ServerState&, const Message& confirm, PhaseContext& ctx) const override {
    if (!ctx.scratch.contains("sk")) return Reject{"h_3"};
    const BigInt* h_3 = int_field(confirm, "h_3");
    const BigInt& sk = ctx.scratch_int("sk");
    if (h_3 == nullptr || ctx.meter.h({ctx.scratch_int("ID"), sk}) != *h_3) return Reject{"h_3"};
    return ServerAccept{sk};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    const BigInt& n = card.integer("N");
    BigInt w = ctx.meter.h({old_pw.text(), n});
    BigInt w_new = ctx.meter.h({new_pw.text(), n});
    card.slots["B"] = mod(card.integer("B") - h_q(w, ctx) + h_q(w_new, ctx), card.integer("p"));
  }

 private:
  // h maps into Z_q.
  BigInt h_q(const BigInt& value, PhaseContext& ctx) const { return mod(ctx.meter.h({value}), params_.q); }

  BigInt id_term(const ServerState& server, const BigInt& id, PhaseContext& ctx) const {
    return h_q(ctx.meter.pow(id, server.secret("x"), params_.p), ctx);
  }

  crypto::DhParams params_;
  BigInt x_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_wei(const crypto::DhParams& params, const BigInt& x) {
  if (!crypto::is_valid(params)) throw Error(ErrorCode::InvalidParameters, "wei2012: invalid group");
  if (x <= 0 || x >= params.q) throw Error(ErrorCode::InvalidParameters, "wei2012: x must lie in [1, q-1]");
  return std::make_shared<WeiSuite>(params, x);
}

}  // namespace tmis::schemes
