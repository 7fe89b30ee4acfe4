#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

class XuSuite final : public SchemeSuite {
 public:
  XuSuite(crypto::EcParams params, BigInt s) : params_(std::move(params)), s_(std::move(s)) {
    meta_.uses_timestamps = true;
    meta_.login_timestamp_field = "T_1";
    meta_.password_slot = "B";
  }

  SchemeId id() const override { return SchemeId::Xu2014; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"a", params_.curve.a},   {"b", params_.curve.b}, {"p", params_.curve.p},
            {"P", params_.base},      {"n", params_.order},   {"Y", params_.public_point}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"s", s_}}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    BigInt r = ctx.rng.bits(32);
    BigInt w = ctx.meter.h({pw.text(), r});
    BigInt h = ctx.meter.h({server.secret("s") ^ id.as_int()});
    server.add_account(new_account(id));
    return SmartCard{this->id(),
                     {{"E_p", params_.curve}, {"P", params_.base}, {"Y", params_.public_point}, {"B", h ^ w}, {"r", r}}};
  }

  Message login_begin(SmartCard& card, const Identity& id_input, const Password& pw_input,
                      PhaseContext& ctx) const override {
    const auto& curve = card.curve("E_p");
    BigInt w = ctx.meter.h({pw_input.text(), card.integer("r")});
    BigInt h = card.integer("B") ^ w;
    BigInt a = ctx.rng.between(1, params_.order - 1);
    crypto::EcPoint c_1 = ctx.meter.mul(a, card.point("P"), curve);
    crypto::EcPoint c_2 = ctx.meter.mul(a, card.point("Y"), curve);
    BigInt id = id_input.as_int();
    BigInt cid = id ^ low_bits(ctx.meter.h_point(c_2), kIdentityBits);
    BigInt t_1 = timestamp(ctx);
    BigInt f = ctx.meter.h({id, h, t_1});
    ctx.scratch["a"] = a;
    ctx.scratch["H"] = h;
    ctx.scratch["ID"] = id;
    return message("M_1", Role::User, Role::Server, {{"C_1", c_1}, {"CID", cid}, {"F", f}, {"T_1", t_1}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* t_1 = int_field(login, "T_1");
    if (t_1 == nullptr || !fresh(ctx, *t_1)) return Reject{"T_1"};
    const crypto::EcPoint* c_1 = point_field(login, "C_1");
    if (c_1 == nullptr || c_1->infinity || !crypto::on_curve(*c_1, params_.curve)) return Reject{"C_1"};
    const BigInt* cid = int_field(login, "CID");
    const BigInt* f = int_field(login, "F");
    if (cid == nullptr || f == nullptr) return Reject{"F"};

    const BigInt& s = server.secret("s");
    crypto::EcPoint c_2 = ctx.meter.mul(s, *c_1, params_.curve);
    BigInt id = *cid ^ low_bits(ctx.meter.h_point(c_2), kIdentityBits);
    BigInt h = ctx.meter.h({s ^ id});
    if (ctx.meter.h({id, h, *t_1}) != *f) return Reject{"F"};

    BigInt c = ctx.rng.between(1, params_.order - 1);
    crypto::EcPoint d_1 = ctx.meter.mul(c, params_.base, params_.curve);
    crypto::EcPoint d_2 = ctx.meter.mul(c, *c_1, params_.curve);
    BigInt sk = ctx.meter.h({id, ctx.meter.h_point(d_2), h});
    BigInt t_2 = timestamp(ctx);
    BigInt g = ctx.meter.h({sk, h, t_2});
    return ServerReply{message("M_2", Role::Server, Role::User, {{"D_1", d_1}, {"G", g}, {"T_2", t_2}}), sk, true};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* t_2 = int_field(reply, "T_2");
    if (t_2 == nullptr || !fresh(ctx, *t_2)) return Reject{"T_2"};
    const crypto::EcPoint* d_1 = point_field(reply, "D_1");
    const auto& curve = card.curve("E_p");
    if (d_1 == nullptr || !crypto::on_curve(*d_1, curve)) return Reject{"D_1"};
    const BigInt* g = int_field(reply, "G");
    const BigInt& h = ctx.scratch_int("H");
    crypto::EcPoint d_2 = ctx.meter.mul(ctx.scratch_int("a"), *d_1, curve);
    BigInt sk = ctx.meter.h({ctx.scratch_int("ID"), ctx.meter.h_point(d_2), h});
    if (g == nullptr || ctx.meter.h({sk, h, *t_2}) != *g) return Reject{"G"};
    return UserReply{std::nullopt, sk};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    const BigInt& r = card.integer("r");
    BigInt h = card.integer("B") ^ ctx.meter.h({old_pw.text(), r});
    card.slots["B"] = h ^ ctx.meter.h({new_pw.text(), r});
  }

 private:
  crypto::EcParams params_;
  BigInt s_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_xu(const crypto::EcParams& params, const BigInt& s) {
  if (!crypto::is_valid(params)) throw Error(ErrorCode::InvalidParameters, "xu2014: invalid curve parameters");
  if (s <= 0 || s >= params.order) throw Error(ErrorCode::InvalidParameters, "xu2014: s must lie in [1, n-1]");
  if (crypto::ec_mul(s, params.base, params.curve) != params.public_point) {
    throw Error(ErrorCode::InvalidParameters, "xu2014: Y must equal s*P");
  }
  return std::make_shared<XuSuite>(params, s);
}

}  // namespace tmis::schemes
