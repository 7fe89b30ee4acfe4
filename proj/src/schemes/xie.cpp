#include "common.hpp"
#include "tmis/schemes.hpp"

namespace tmis::schemes {

namespace {

using namespace protocol;
using namespace detail;

const crypto::PackLayout& login_layout() {
  static const crypto::PackLayout layout{
      {"ID", kIdentityBits}, {"N", kCounterBits}, {"SC", kCardNumberBits}, {"C_1", kHashFieldBits}};
  return layout;
}

const crypto::PackLayout& record_layout() {
  static const crypto::PackLayout layout{{"ID", kIdentityBits}, {"N", kCounterBits}, {"SC", kCardNumberBits}};
  return layout;
}

constexpr unsigned kExponentBits = 64;

class XieSuite final : public SchemeSuite {
 public:
  XieSuite(crypto::RsaKeys keys, BigInt x, Bytes sym_key)
      : keys_(std::move(keys)), x_(std::move(x)), sym_key_(std::move(sym_key)) {
    meta_.uses_timestamps = true;
    meta_.card_stores_identity = true;
    meta_.supports_revocation = true;
    meta_.login_timestamp_field = "T_u";
    meta_.password_slot = "L";
  }

  SchemeId id() const override { return SchemeId::Xie2013; }
  const SchemeMetadata& metadata() const override { return meta_; }

  std::map<std::string, FieldValue> public_parameters() const override {
    return {{"n", keys_.n}, {"e", keys_.e}};
  }

  ServerState make_server() const override { return ServerState{id(), {{"X", x_}}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    if (server.has_account(id.value())) throw Error(ErrorCode::DuplicateIdentity, std::to_string(id.value()));
    AccountRecord record = new_account(id);
    record.card_number = fresh_card_number(ctx, std::nullopt);
    return issue_card(server, std::move(record), pw, ctx, true);
  }

  Message login_begin(SmartCard& card, const Identity&, const Password& pw_input,
                      PhaseContext& ctx) const override {
    const BigInt& n = card.integer("n");
    const BigInt& e = card.integer("e");
    BigInt a = ctx.rng.between(1, (BigInt(1) << kExponentBits) - 1);
    BigInt j = card.integer("L") ^ ctx.meter.h({pw_input.text()});
    BigInt big_a = ctx.meter.pow(j, a, n);
    BigInt t_u = timestamp(ctx);
    BigInt c_1 = low_bits(ctx.meter.h({t_u, j, big_a}), kHashFieldBits);
    crypto::PackedPlaintext block(login_layout(), {card.integer("ID"), card.integer("N"), card.integer("SC"), c_1});
    BigInt aid = ctx.meter.pow(block.encode_for(n), e, n);
    // A is as wide as n, so it travels in a second RSA block.
    BigInt aid_a = ctx.meter.pow(big_a, e, n);
    ctx.scratch["a"] = a;
    ctx.scratch["A"] = big_a;
    ctx.scratch["C_1"] = c_1;
    ctx.scratch["T_u"] = t_u;
    return message("M_1", Role::User, Role::Server, {{"AID", aid}, {"AID_A", aid_a}, {"T_u", t_u}});
  }

  ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const override {
    const BigInt* t_u = int_field(login, "T_u");
    if (t_u == nullptr || !fresh(ctx, *t_u)) return Reject{"T_u"};
    const BigInt* aid = int_field(login, "AID");
    const BigInt* aid_a = int_field(login, "AID_A");
    if (aid == nullptr || aid_a == nullptr) return Reject{"AID"};
    const BigInt& x = server.secret("X");
    auto opened = rsa(ctx, *aid, x, keys_.n);
    auto big_a = rsa(ctx, *aid_a, x, keys_.n);
    if (!opened || !big_a || bit_length(*opened) > login_layout().total_width()) return Reject{"AID"};
    auto block = crypto::PackedPlaintext::decode(login_layout(), *opened);
    const BigInt& id = block.get("ID");
    const BigInt& n_count = block.get("N");
    const BigInt& sc = block.get("SC");

    BigInt j = ctx.meter.h({x, id, n_count, sc});
    BigInt c_1 = low_bits(ctx.meter.h({*t_u, j, *big_a}), kHashFieldBits);
    if (!registered(server, id)) return Reject{"ID"};
    if (!record_matches(server.account(static_cast<std::uint32_t>(id)), block)) return Reject{"SC"};
    if (c_1 != block.get("C_1")) return Reject{"C_1"};

    BigInt b = ctx.rng.between(1, (BigInt(1) << kExponentBits) - 1);
    BigInt big_b = ctx.meter.pow(j, b, keys_.n);
    BigInt c = ctx.meter.pow(*big_a, b, keys_.n);
    BigInt t_s = timestamp(ctx);
    BigInt c_2 = ctx.meter.h({c_1, c, t_s, big_b});
    BigInt sk = ctx.meter.h({*t_u, c, t_s});
    ctx.scratch["b"] = b;
    return ServerReply{message("M_2", Role::Server, Role::User, {{"C_2", c_2}, {"T_s", t_s}, {"B", big_b}}), sk,
                       true};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt* t_s = int_field(reply, "T_s");
    if (t_s == nullptr || !fresh(ctx, *t_s)) return Reject{"T_s"};
    const BigInt* c_2 = int_field(reply, "C_2");
    const BigInt* big_b = int_field(reply, "B");
    if (c_2 == nullptr || big_b == nullptr) return Reject{"C_2"};
    BigInt c = ctx.meter.pow(*big_b, ctx.scratch_int("a"), card.integer("n"));
    if (ctx.meter.h({ctx.scratch_int("C_1"), c, *t_s, *big_b}) != *c_2) return Reject{"C_2"};
    return UserReply{std::nullopt, ctx.meter.h({ctx.scratch_int("T_u"), c, *t_s})};
  }

  void change_password_offline(SmartCard& card, const Identity&, const Password& old_pw, const Password& new_pw,
                               PhaseContext& ctx) const override {
    card.slots["L"] = card.integer("L") ^ ctx.meter.h({old_pw.text()}) ^ ctx.meter.h({new_pw.text()});
  }

  SmartCard revoke(ServerState& server, const Identity& id, const Password& pw, PhaseContext& ctx) const override {
    AccountRecord record = server.account(id.value());
    record.counter_n += 1;
    record.card_number = fresh_card_number(ctx, record.card_number);
    return issue_card(server, std::move(record), pw, ctx, false);
  }

 private:
  static std::uint64_t fresh_card_number(PhaseContext& ctx, std::optional<std::uint64_t> previous) {
    for (;;) {
      auto sc = static_cast<std::uint64_t>(ctx.rng.between(1, (BigInt(1) << kCardNumberBits) - 1));
      if (sc != previous) return sc;
    }
  }

  bool record_matches(const AccountRecord& account, const crypto::PackedPlaintext& block) const {
    try {
      auto record = crypto::sym_decrypt(sym_key_, account.rid, record_layout());
      return record.get("ID") == block.get("ID") && record.get("N") == block.get("N") &&
             record.get("SC") == block.get("SC");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DecryptFailure) throw;
      return false;
    }
  }

  SmartCard issue_card(ServerState& server, AccountRecord record, const Password& pw, PhaseContext& ctx,
                       bool is_new) const {
    if (record.counter_n >= (1u << kCounterBits)) throw Error(ErrorCode::PackingOverflow, "registration count");
    BigInt ident = record.identity;
    BigInt n_count = record.counter_n;
    BigInt sc = *record.card_number;
    record.rid = crypto::sym_encrypt(sym_key_, crypto::PackedPlaintext(record_layout(), {ident, n_count, sc}));
    BigInt j = ctx.meter.h({server.secret("X"), ident, n_count, sc});
    if (is_new) {
      server.add_account(std::move(record));
    } else {
      server.account(record.identity) = std::move(record);
    }
    BigInt l = j ^ ctx.meter.h({pw.text()});
    return SmartCard{this->id(), {{"ID", ident}, {"SC", sc}, {"N", n_count}, {"L", l}, {"n", keys_.n}, {"e", keys_.e}}};
  }

  crypto::RsaKeys keys_;
  BigInt x_;
  Bytes sym_key_;
  SchemeMetadata meta_;
};

}  // namespace

SuitePtr build_xie(const crypto::RsaKeys& keys, const BigInt& x_secret, const Bytes& sym_key) {
  require_rsa(keys, login_layout().total_width(), "xie2013");
  BigInt phi = (keys.p - 1) * (keys.q - 1);
  if (x_secret <= 0 || crypto::mod(keys.e * x_secret, phi) != 1) {
    throw Error(ErrorCode::InvalidParameters, "xie2013: e * X must be 1 mod (p-1)(q-1)");
  }
  if (sym_key.empty()) throw Error(ErrorCode::InvalidParameters, "xie2013: empty account-table key");
  return std::make_shared<XieSuite>(keys, x_secret, sym_key);
}

}  // namespace tmis::schemes
