#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

const crypto::PackLayout& login_layout() {
  static const crypto::PackLayout layout{{"CID", kHashFieldBits}, {"k", kNonceBits}, {"ID", kIdentityBits}};
  return layout;
}

class LinSuite final : public SchemeSuite {
 public:
  explicit LinSuite(crypto::RsaKeys keys) : keys_(std::move(keys)) {
    meta_.uses_timestamps = true;
    meta_.login_timestamp_field = "T_1";
    meta_.password_slot = "v";
  }

  SchemeId id() const override { return SchemeId::Lin2013; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"N", keys_.n}, {"e", keys_.e}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"d", keys_.d}}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    BigInt t = ctx.rng.below(keys_.n);
    BigInt w = ctx.meter.h({pw.as_int() ^ t});
    BigInt v = w ^ ctx.meter.h({server.secret("d") ^ id.as_int()});
    server.add_account(new_account(id));
    return SmartCard{this->id(), {{"N", keys_.n}, {"v", v}, {"e", keys_.e}, {"t", t}}};
  }

  Message login_begin(SmartCard& card, const Identity& id_input, const Password& pw_input,
                      PhaseContext& ctx) const override {
    BigInt k = ctx.rng.bits(kNonceBits);
    BigInt w = ctx.meter.h({pw_input.as_int() ^ card.integer("t")});
    BigInt h = card.integer("v") ^ w;
    BigInt cid = ctx.meter.h({h ^ k});
    BigInt t_1 = timestamp(ctx);
    BigInt id = id_input.as_int();
    BigInt r = ctx.meter.h({cid, k, id, t_1});
    crypto::PackedPlaintext block(login_layout(), {low_bits(cid, kHashFieldBits), k, id});
    const BigInt& n = card.integer("N");
    BigInt x = ctx.meter.pow(block.encode_for(n), card.integer("e"), n);
    ctx.scratch["k"] = k;
    ctx.scratch["H"] = h;
    ctx.scratch["CID"] = cid;
    ctx.scratch["R"] = r;
    ctx.scratch["T_1"] = t_1;
    return message("M_1", Role::User, Role::Server, {{"X", x}, {"R", r}, {"T_1", t_1}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* t_1 = int_field(login, "T_1");
    if (t_1 == nullptr || !fresh(ctx, *t_1)) return Reject{"T_1"};
    const BigInt* x = int_field(login, "X");
    const BigInt* r = int_field(login, "R");
    if (x == nullptr || r == nullptr) return Reject{"X"};
    auto opened = rsa(ctx, *x, server.secret("d"), keys_.n);
    if (!opened || bit_length(*opened) > login_layout().total_width()) return Reject{"X"};
    auto block = crypto::PackedPlaintext::decode(login_layout(), *opened);
    const BigInt& k = block.get("k");
    const BigInt& id = block.get("ID");

    BigInt h = ctx.meter.h({server.secret("d") ^ id});
    BigInt cid = ctx.meter.h({h ^ k});
    BigInt r_expected = ctx.meter.h({cid, k, id, *t_1});
    if (low_bits(cid, kHashFieldBits) != block.get("CID")) return Reject{"CID"};
    if (r_expected != *r) return Reject{"R"};

    BigInt t_2 = timestamp(ctx);
    BigInt lambda = ctx.meter.h({h, cid, *r, *t_1, t_2});
    BigInt v = ctx.meter.h({lambda, h, *t_1, t_2});
    return ServerReply{message("M_2", Role::Server, Role::User, {{"V", v}, {"T_2", t_2}}), lambda, true};
  }

  UserStep user_finalize(const SmartCard&, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* t_2 = int_field(reply, "T_2");
    if (t_2 == nullptr || !fresh(ctx, *t_2)) return Reject{"T_2"};
    const BigInt* v = int_field(reply, "V");
    const BigInt& h = ctx.scratch_int("H");
    const BigInt& t_1 = ctx.scratch_int("T_1");
    BigInt lambda = ctx.meter.h({h, ctx.scratch_int("CID"), ctx.scratch_int("R"), t_1, *t_2});
    if (v == nullptr || ctx.meter.h({lambda, h, t_1, *t_2}) != *v) return Reject{"V"};
    return UserReply{std::nullopt, lambda};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    const BigInt& t = card.integer("t");
    card.slots["v"] = card.integer("v") ^ ctx.meter.h({old_pw.as_int() ^ t}) ^ ctx.meter.h({new_pw.as_int() ^ t});
  }

 private:
  crypto::RsaKeys keys_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_lin(const crypto::RsaKeys& keys) {
  require_rsa(keys, login_layout().total_width(), "lin2013");
  return std::make_shared<LinSuite>(keys);
}

}  // namespace tmis::schemes
