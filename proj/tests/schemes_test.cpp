#include <gtest/gtest.h>

#include <functional>

#include "tmis/errors.hpp"
#include "tmis/schemes.hpp"
#include "tmis/serialize.hpp"

using namespace tmis;
using namespace tmis::protocol;
using crypto::mod_exp;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no tmis::Error thrown";
  return ErrorCode::InvalidParameters;
}

BigInt H(std::initializer_list<crypto::HashArg> args) { return crypto::hash(args).to_int(); }
BigInt Hp(const crypto::EcPoint& p) { return H({"ec-point", p.x, p.y}); }
BigInt low(const BigInt& v, unsigned bits) { return v & ((BigInt(1) << bits) - 1); }
BigInt pack(std::initializer_list<std::pair<BigInt, unsigned>> fields) {
  BigInt out = 0;
  for (const auto& [v, w] : fields) out = (out << w) | v;
  return out;
}
const BigInt& I(const std::map<std::string, FieldValue>& m, const std::string& k) { return std::get<BigInt>(m.at(k)); }
const BigInt& S(const Scratch& s, const std::string& k) { return std::get<BigInt>(s.at(k)); }

struct Honest {
  SchemeId scheme;
  Simulation& sim;
  const SmartCard& card;  // as issued, before the login
  const AuthResult& r;
  const Identity& id;
  const Password& pw;

  const Message& msg(std::size_t i) const { return r.transcript.messages.at(i).message; }
  BigInt secret(const std::string& k) const { return sim.server().secret(k); }
  std::map<std::string, FieldValue> pub() const { return sim.suite().public_parameters(); }
  const MutualAuthSuccess& ok() const { return std::get<MutualAuthSuccess>(r.outcome); }
};

// Each checker recomputes every transmitted field and both keys.
void check_wei(const Honest& x) {
  auto pub = x.pub();
  const BigInt &p = I(pub, "p"), &q = I(pub, "q"), &g = I(pub, "g");
  BigInt ID = x.id.as_int();
  auto hq = [&](const BigInt& v) { return H({v}) % q; };
  BigInt id_term = hq(mod_exp(ID, x.secret("x"), p));
  BigInt W = H({x.pw.text(), x.card.integer("N")});
  ASSERT_EQ(x.card.integer("B"), (id_term + hq(W)) % p);

  BigInt A = mod_exp(g, S(x.r.card_scratch, "r_U"), p);
  BigInt Bp = ((x.card.integer("B") - hq(W) + p) % p) * A % p;
  EXPECT_EQ(x.msg(0).integer("ID"), ID);
  EXPECT_EQ(x.msg(0).integer("B'"), Bp);
  EXPECT_EQ(x.msg(0).integer("h_1"), H({A, Bp, ID}));
  EXPECT_EQ(S(x.r.server_scratch, "A'"), A);

  BigInt rS = x.msg(1).integer("r_S");
  BigInt sk = H({ID, A, Bp, rS});
  EXPECT_EQ(x.msg(1).integer("h_2"), H({sk, rS}));
  EXPECT_EQ(x.msg(2).integer("h_3"), H({ID, sk}));
  EXPECT_EQ(*x.ok().user_key, sk);
  EXPECT_EQ(*x.ok().server_key, sk);
}

void check_zhu(const Honest& x) {
  auto pub = x.pub();
  const BigInt &n = I(pub, "n"), &e = I(pub, "e");
  BigInt ID = x.id.as_int(), d = x.secret("d");
  BigInt W = H({x.pw.text(), x.card.integer("N")});
  ASSERT_EQ(x.card.integer("B"), H({BigInt(ID ^ d)}) ^ H({W}));

  BigInt rU = S(x.r.card_scratch, "r_U");
  BigInt h1 = H({H({BigInt(ID ^ d)}), rU});
  EXPECT_EQ(x.msg(0).integer("ID"), ID);
  EXPECT_EQ(x.msg(0).integer("X"), mod_exp(pack({{low(h1, 32), 32}, {rU, 32}}), e, n));
  BigInt rS = x.msg(1).integer("r_S");
  EXPECT_EQ(x.msg(1).integer("h_2"), H({ID, rU, rS}));
  EXPECT_EQ(x.msg(2).integer("h_3"), H({ID, rS, rU}));
  EXPECT_FALSE(x.ok().user_key.has_value());
  EXPECT_FALSE(x.ok().server_key.has_value());
}

void check_lee_liu(const Honest& x) {
  auto pub = x.pub();
  const BigInt &n = I(pub, "n"), &e = I(pub, "e");
  BigInt ID = x.id.as_int(), d = x.secret("d");
  BigInt W = H({x.pw.text(), x.card.integer("N")});
  BigInt h_id = H({BigInt(ID ^ d)});
  ASSERT_EQ(x.card.integer("B"), h_id ^ W);

  BigInt rU = S(x.r.card_scratch, "r_U");
  BigInt SN = x.card.integer("SN") + 1;
  EXPECT_EQ(S(x.r.card_scratch, "SN"), SN);
  BigInt h1 = H({h_id, rU, SN});
  EXPECT_EQ(x.msg(0).integer("X"), mod_exp(pack({{ID, 16}, {low(h1, 32), 32}, {rU, 32}, {SN, 16}}), e, n));
  BigInt rS = S(x.r.server_scratch, "r_S");
  EXPECT_EQ(x.msg(1).integer("r_S^r_U"), rS ^ rU);
  EXPECT_EQ(x.msg(1).integer("h_2"), H({ID, rU, rS, SN}));
  BigInt sk = H({ID, rS, rU, SN});
  EXPECT_EQ(x.msg(2).integer("h_3"), H({sk}));
  EXPECT_EQ(*x.ok().user_key, sk);
  EXPECT_EQ(*x.ok().server_key, sk);
}

void check_lin(const Honest& x) {
  auto pub = x.pub();
  const BigInt &N = I(pub, "N"), &e = I(pub, "e");
  BigInt ID = x.id.as_int(), d = x.secret("d");
  BigInt h = H({BigInt(d ^ ID)});
  ASSERT_EQ(x.card.integer("v"), H({BigInt(x.pw.as_int() ^ x.card.integer("t"))}) ^ h);

  BigInt k = S(x.r.card_scratch, "k");
  BigInt T1 = x.msg(0).integer("T_1");
  BigInt CID = H({BigInt(h ^ k)});
  BigInt R = H({CID, k, ID, T1});
  EXPECT_EQ(x.msg(0).integer("R"), R);
  EXPECT_EQ(x.msg(0).integer("X"), mod_exp(pack({{low(CID, 32), 32}, {k, 32}, {ID, 16}}), e, N));
  BigInt T2 = x.msg(1).integer("T_2");
  BigInt lambda = H({h, CID, R, T1, T2});
  EXPECT_EQ(x.msg(1).integer("V"), H({lambda, h, T1, T2}));
  EXPECT_EQ(x.r.transcript.messages.size(), 2u);
  EXPECT_EQ(*x.ok().user_key, lambda);
  EXPECT_EQ(*x.ok().server_key, lambda);
}

void check_cao_zhai(const Honest& x) {
  BigInt n = I(x.pub(), "n");
  BigInt ID = x.id.as_int();
  BigInt J = H({x.secret("p"), x.secret("q"), ID, x.sim.server().account(x.id.value()).counter_n});
  ASSERT_EQ(x.card.integer("L"), J ^ H({x.card.integer("b"), x.pw.text()}));
  EXPECT_FALSE(x.card.slots.contains("ID"));

  BigInt ru = S(x.r.card_scratch, "r_u");
  BigInt m = pack({{ID, 16}, {low(J, 32), 32}, {ru, 32}});
  EXPECT_EQ(x.msg(0).integer("AID"), m * m % n);
  BigInt rs = x.msg(1).integer("r_s");
  BigInt K = H({ru, rs});
  EXPECT_EQ(x.msg(1).integer("C_s"), H({K, rs}));
  EXPECT_EQ(x.msg(2).integer("C_u"), H({rs, K}));
  EXPECT_EQ(*x.ok().user_key, K);
  EXPECT_EQ(*x.ok().server_key, K);
}

void check_xie(const Honest& x) {
  auto pub = x.pub();
  const BigInt &n = I(pub, "n"), &e = I(pub, "e");
  BigInt ID = x.id.as_int(), Nc = x.card.integer("N"), SC = x.card.integer("SC");
  BigInt J = H({x.secret("X"), ID, Nc, SC});
  ASSERT_EQ(x.card.integer("L"), J ^ H({x.pw.text()}));

  BigInt A = mod_exp(J, S(x.r.card_scratch, "a"), n);
  BigInt Tu = x.msg(0).integer("T_u");
  BigInt C1 = low(H({Tu, J, A}), 32);
  EXPECT_EQ(x.msg(0).integer("AID"), mod_exp(pack({{ID, 16}, {Nc, 16}, {SC, 16}, {C1, 32}}), e, n));
  EXPECT_EQ(x.msg(0).integer("AID_A"), mod_exp(A, e, n));
  BigInt b = S(x.r.server_scratch, "b");
  BigInt B = mod_exp(J, b, n), C = mod_exp(A, b, n);
  BigInt Ts = x.msg(1).integer("T_s");
  EXPECT_EQ(x.msg(1).integer("B"), B);
  EXPECT_EQ(x.msg(1).integer("C_2"), H({C1, C, Ts, B}));
  BigInt sk = H({Tu, C, Ts});
  EXPECT_EQ(*x.ok().user_key, sk);
  EXPECT_EQ(*x.ok().server_key, sk);
}

void check_xu(const Honest& x) {
  auto pub = x.pub();
  crypto::EcCurve E{I(pub, "a"), I(pub, "b"), I(pub, "p")};
  const auto& P = std::get<crypto::EcPoint>(pub.at("P"));
  BigInt s = x.secret("s"), ID = x.id.as_int();
  EXPECT_EQ(std::get<crypto::EcPoint>(pub.at("Y")), crypto::ec_mul(s, P, E));
  BigInt h = H({BigInt(s ^ ID)});
  ASSERT_EQ(x.card.integer("B"), h ^ H({x.pw.text(), x.card.integer("r")}));

  BigInt a = S(x.r.card_scratch, "a");
  crypto::EcPoint C1 = crypto::ec_mul(a, P, E);
  crypto::EcPoint C2 = crypto::ec_mul(s, C1, E);
  EXPECT_EQ(C2, crypto::ec_mul(a, x.card.point("Y"), E));
  BigInt T1 = x.msg(0).integer("T_1");
  EXPECT_EQ(x.msg(0).point("C_1"), C1);
  EXPECT_EQ(x.msg(0).integer("CID"), ID ^ low(Hp(C2), 16));
  EXPECT_EQ(x.msg(0).integer("F"), H({ID, h, T1}));
  const auto& D1 = x.msg(1).point("D_1");
  BigInt sk = H({ID, Hp(crypto::ec_mul(a, D1, E)), h});
  EXPECT_EQ(x.msg(1).integer("G"), H({sk, h, x.msg(1).integer("T_2")}));
  EXPECT_EQ(*x.ok().user_key, sk);
  EXPECT_EQ(*x.ok().server_key, sk);
}

using Checker = std::function<void(const Honest&)>;
Checker checker_for(SchemeId s) {
  switch (s) {
    case SchemeId::Wei2012: return check_wei;
    case SchemeId::Zhu2012: return check_zhu;
    case SchemeId::LeeLiu2013: return check_lee_liu;
    case SchemeId::Lin2013: return check_lin;
    case SchemeId::CaoZhai2013: return check_cao_zhai;
    case SchemeId::Xie2013: return check_xie;
    case SchemeId::Xu2014: return check_xu;
  }
  return {};
}

class PerScheme : public ::testing::TestWithParam<SchemeId> {};

std::string name_of(const ::testing::TestParamInfo<SchemeId>& info) { return std::string(to_string(info.param)); }

struct Env {
  explicit Env(SchemeId s, std::uint64_t seed = 1) : sim(schemes::make_suite(s, seed), seed) {
    card = sim.register_user(id, pw);
  }
  Identity id{1234};
  Password pw{"correct horse"};
  Simulation sim;
  SmartCard card;
};

}  // namespace

TEST_P(PerScheme, HonestSessionsMatchEquations) {
  auto check = checker_for(GetParam());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Simulation sim(schemes::make_suite(GetParam(), seed), seed);
    Identity id(static_cast<std::uint32_t>(1 + seed * 613 % 65000));
    Password pw("pw-" + std::to_string(seed));
    SmartCard card = sim.register_user(id, pw);
    SmartCard issued = card;
    AuthResult r = sim.authenticate(card, id, pw);
    ASSERT_TRUE(is_success(r.outcome)) << "seed " << seed << ": " << failure_step(r.outcome);
    check(Honest{GetParam(), sim, issued, r, id, pw});
    if (HasFailure()) FAIL() << "seed " << seed;
  }
}

TEST_P(PerScheme, DuplicateRegistrationRejected) {
  Env env(GetParam());
  EXPECT_EQ(code_of([&] { env.sim.register_user(env.id, Password("other")); }), ErrorCode::DuplicateIdentity);
}

TEST_P(PerScheme, SameSeedSameTranscript) {
  auto run = [&] {
    Env env(GetParam(), 77);
    return serialize::to_json(env.sim.authenticate(env.card, env.id, env.pw).transcript).dump();
  };
  EXPECT_EQ(run(), run());
}

TEST_P(PerScheme, TamperedReplyRejectedByCard) {
  static const std::map<SchemeId, std::pair<std::string, std::string>> target = {
      {SchemeId::Wei2012, {"h_2", "h_2"}},    {SchemeId::Zhu2012, {"h_2", "h_2"}},
      {SchemeId::LeeLiu2013, {"h_2", "h_2"}}, {SchemeId::Lin2013, {"V", "V"}},
      {SchemeId::CaoZhai2013, {"C_s", "C_s"}}, {SchemeId::Xie2013, {"C_2", "C_2"}},
      {SchemeId::Xu2014, {"G", "G"}},
  };
  Env env(GetParam());
  auto [field, step] = target.at(GetParam());
  FieldTransform flip = [](const FieldValue& v, const Message&) -> FieldValue { return BigInt(std::get<BigInt>(v) ^ 1); };
  auto r = env.sim.authenticate(env.card, env.id, env.pw, AdversaryScript{{Replace{"M_2", field, flip}}});
  EXPECT_EQ(outcome_kind(r.outcome), "UserReject");
  EXPECT_EQ(failure_step(r.outcome), step);
}

TEST_P(PerScheme, CorrectPasswordChangeIsAnInvolution) {
  Env env(GetParam());
  SmartCard original = env.card;
  Password next("brand new");
  auto first = env.sim.change_password(env.card, env.id, env.pw, next);
  ASSERT_EQ(first.status, ChangeOutcome::Status::Applied) << first.step;
  EXPECT_TRUE(first.card_mutated);
  EXPECT_TRUE(is_success(env.sim.authenticate(env.card, env.id, next).outcome));
  EXPECT_FALSE(is_success(env.sim.authenticate(env.card, env.id, env.pw).outcome));
  auto back = env.sim.change_password(env.card, env.id, next, env.pw);
  ASSERT_EQ(back.status, ChangeOutcome::Status::Applied);
  SmartCard restored = env.card;
  // Lee-Liu's counter moves with every login; everything else returns exactly.
  restored.slots.erase("SN");
  original.slots.erase("SN");
  EXPECT_EQ(restored, original);
}

TEST_P(PerScheme, WrongOldPasswordChange) {
  Env env(GetParam());
  SmartCard original = env.card;
  const std::string slot = env.sim.suite().metadata().password_slot;
  Password wrong("not it"), next("brand new");
  auto out = env.sim.change_password(env.card, env.id, wrong, next);
  if (GetParam() == SchemeId::CaoZhai2013) {
    EXPECT_EQ(out.status, ChangeOutcome::Status::Rejected);
    EXPECT_EQ(out.step, "J");
    EXPECT_FALSE(out.card_mutated);
    EXPECT_EQ(env.card, original);
    EXPECT_TRUE(is_success(env.sim.authenticate(env.card, env.id, env.pw).outcome));
    return;
  }
  EXPECT_EQ(out.status, ChangeOutcome::Status::Applied);
  EXPECT_TRUE(out.card_mutated);
  EXPECT_NE(env.card.integer(slot), original.integer(slot));
  // The corruption persists: neither password works any more.
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(outcome_kind(env.sim.authenticate(env.card, env.id, env.pw).outcome), "ServerReject");
    EXPECT_EQ(outcome_kind(env.sim.authenticate(env.card, env.id, next).outcome), "ServerReject");
  }
}

INSTANTIATE_TEST_SUITE_P(All, PerScheme, ::testing::ValuesIn(kAllSchemes), name_of);

TEST(CardContents, SlotNamesPerScheme) {
  std::map<SchemeId, std::set<std::string>> expected = {
      {SchemeId::Wei2012, {"ID", "B", "N", "g", "p"}},
      {SchemeId::Zhu2012, {"n", "e", "ID", "B", "N"}},
      {SchemeId::LeeLiu2013, {"n", "e", "ID", "B", "N", "SN"}},
      {SchemeId::Lin2013, {"N", "v", "e", "t"}},
      {SchemeId::CaoZhai2013, {"L", "n", "b"}},
      {SchemeId::Xie2013, {"ID", "SC", "N", "L", "n", "e"}},
      {SchemeId::Xu2014, {"E_p", "P", "Y", "B", "r"}},
  };
  for (SchemeId s : kAllSchemes) EXPECT_EQ(Env(s).card.slot_names(), expected.at(s)) << to_string(s);
}

TEST(Wei, ToyGroupRegistration) {
  crypto::DhParams toy{23, 11, 2};
  auto suite = schemes::build_wei(toy, 3);
  Simulation sim(suite, 5);
  int registered = 0;
  for (std::uint32_t v = 1; v <= 40; ++v) {
    Identity id(v);
    Password pw("pw" + std::to_string(v));
    BigInt id_term = H({mod_exp(v, 3, 23)}) % 11;
    if (id_term == 0) {
      EXPECT_EQ(code_of([&] { sim.register_user(id, pw); }), ErrorCode::RegistrationRejected);
      continue;
    }
    SmartCard card = sim.register_user(id, pw);
    BigInt W = H({pw.text(), card.integer("N")});
    EXPECT_EQ(card.integer("B"), (id_term + H({W}) % 11) % 23);
    auto r = sim.authenticate(card, id, pw);
    EXPECT_TRUE(is_success(r.outcome)) << v << " " << failure_step(r.outcome);
    ++registered;
  }
  EXPECT_GT(registered, 20);
}

TEST(Builders, RejectInvalidParameters) {
  crypto::DhParams toy{23, 11, 2};
  EXPECT_EQ(code_of([&] { schemes::build_wei(toy, 0); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([&] { schemes::build_wei(toy, 11); }), ErrorCode::InvalidParameters);
  auto small = crypto::rsa_keygen(16, 1);
  EXPECT_EQ(code_of([&] { schemes::build_zhu(small); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([&] { schemes::build_cao_zhai(crypto::RabinKeys{77, 7, 11}); }), ErrorCode::InvalidParameters);
  auto keys = crypto::rsa_keygen(96, 2);
  EXPECT_EQ(code_of([&] { schemes::build_xie(keys, keys.d + 1, Bytes(32, 1)); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([&] { schemes::build_xie(keys, keys.d, Bytes{}); }), ErrorCode::InvalidParameters);
  auto params = crypto::make_ec_params(crypto::toy_curve(), crypto::toy_base_point(), 19, 4);
  EXPECT_EQ(code_of([&] { schemes::build_xu(params, 0); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([&] { schemes::build_xu(params, 5); }), ErrorCode::InvalidParameters);
}

TEST(WrongIdentity, TypedIdentitySchemesRejectAtNamedStep) {
  std::map<SchemeId, std::string> step = {
      {SchemeId::Lin2013, "CID"}, {SchemeId::CaoZhai2013, "ID"}, {SchemeId::Xu2014, "F"}};
  for (auto [s, expected] : step) {
    Env env(s);
    auto r = env.sim.authenticate(env.card, Identity(999), env.pw);
    EXPECT_EQ(failure_step(r.outcome), expected) << to_string(s);
  }
}

TEST(LeeLiu, WatermarkRisesMonotonically) {
  Env env(SchemeId::LeeLiu2013);
  for (std::uint64_t k = 1; k <= 5; ++k) {
    ASSERT_TRUE(is_success(env.sim.authenticate(env.card, env.id, env.pw).outcome));
    EXPECT_EQ(env.sim.server().account(env.id.value()).sn_watermark, k);
  }
  // A card rolled back to an earlier serial number is refused.
  SmartCard old = env.card;
  old.slots["SN"] = BigInt(2);
  auto r = env.sim.authenticate(old, env.id, env.pw);
  EXPECT_EQ(failure_step(r.outcome), "SN");
  EXPECT_EQ(env.sim.server().account(env.id.value()).sn_watermark, 5u);
}

TEST(Revocation, XieIssuesFreshCardAndRetiresOld) {
  Env env(SchemeId::Xie2013);
  SmartCard fresh = env.sim.revoke(env.id, env.pw);
  EXPECT_EQ(fresh.integer("N"), 1);
  EXPECT_NE(fresh.integer("SC"), env.card.integer("SC"));
  EXPECT_EQ(env.sim.server().account(env.id.value()).counter_n, 1u);
  EXPECT_EQ(failure_step(env.sim.authenticate(env.card, env.id, env.pw).outcome), "SC");
  EXPECT_TRUE(is_success(env.sim.authenticate(fresh, env.id, env.pw).outcome));
  EXPECT_EQ(code_of([&] { env.sim.revoke(Identity(999), env.pw); }), ErrorCode::UnknownIdentity);
}

TEST(Revocation, CaoZhaiRetiresOldCard) {
  Env env(SchemeId::CaoZhai2013);
  SmartCard fresh = env.sim.revoke(env.id, env.pw);
  EXPECT_EQ(failure_step(env.sim.authenticate(env.card, env.id, env.pw).outcome), "J");
  EXPECT_TRUE(is_success(env.sim.authenticate(fresh, env.id, env.pw).outcome));
}

TEST(Revocation, UnsupportedElsewhere) {
  for (SchemeId s : {SchemeId::Wei2012, SchemeId::Lin2013, SchemeId::Xu2014}) {
    Env env(s);
    EXPECT_EQ(code_of([&] { env.sim.revoke(env.id, env.pw); }), ErrorCode::Unsupported) << to_string(s);
  }
}

TEST(CaoZhai, ChangeNeedsTheServer) {
  Env env(SchemeId::CaoZhai2013);
  SmartCard original = env.card;
  EXPECT_EQ(code_of([&] { env.sim.change_password(env.card, env.id, env.pw, Password("x"), false); }),
            ErrorCode::ServerUnreachable);
  EXPECT_EQ(env.card, original);
}

TEST(CaoZhai, NonResidueLoginRejected) {
  Env env(SchemeId::CaoZhai2013);
  BigInt n = std::get<BigInt>(env.sim.suite().public_parameters().at("n"));
  // Find c that is not a square mod p; the server must refuse it at AID.
  BigInt p = env.sim.server().secret("p");
  BigInt c = 2;
  while (mod_exp(c, (p - 1) / 2, p) == 1) ++c;
  FieldTransform forge = [c](const FieldValue&, const Message&) -> FieldValue { return c; };
  auto r = env.sim.authenticate(env.card, env.id, env.pw, AdversaryScript{{Replace{"M_1", "AID", forge}}});
  EXPECT_EQ(failure_step(r.outcome), "AID");
  FieldTransform big = [n](const FieldValue&, const Message&) -> FieldValue { return n; };
  r = env.sim.authenticate(env.card, env.id, env.pw, AdversaryScript{{Replace{"M_1", "AID", big}}});
  EXPECT_EQ(failure_step(r.outcome), "AID");
}

TEST(Xu, OffCurvePointRejected) {
  Env env(SchemeId::Xu2014);
  FieldTransform off = [](const FieldValue&, const Message&) -> FieldValue { return crypto::EcPoint{1, 1, false}; };
  auto r = env.sim.authenticate(env.card, env.id, env.pw, AdversaryScript{{Replace{"M_1", "C_1", off}}});
  EXPECT_EQ(failure_step(r.outcome), "C_1");
}

TEST(Timestamps, StaleLoginRejectedAtFreshness) {
  for (SchemeId s : {SchemeId::Lin2013, SchemeId::Xie2013, SchemeId::Xu2014}) {
    Env env(s);
    auto late = env.sim.authenticate(env.card, env.id, env.pw, {}, SessionConfig{6});
    EXPECT_EQ(failure_step(late.outcome), *env.sim.suite().metadata().login_timestamp_field) << to_string(s);
  }
}
