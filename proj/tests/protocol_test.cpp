#include <gtest/gtest.h>

#include "tmis/errors.hpp"
#include "tmis/protocol.hpp"
#include "tmis/serialize.hpp"

using namespace tmis;
using namespace tmis::protocol;

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

// Timestamped hash challenge-response, just enough to drive every branch of
// the drivers and the channel.
class ToySuite : public SchemeSuite {
 public:
  ToySuite() {
    meta_.uses_timestamps = true;
    meta_.login_timestamp_field = "T";
    meta_.password_slot = "K";
  }
  SchemeId id() const override { return SchemeId::Wei2012; }
  const SchemeMetadata& metadata() const override { return meta_; }
  std::map<std::string, FieldValue> public_parameters() const override { return {}; }
  ServerState make_server() const override { return ServerState{SchemeId::Wei2012, {}, {}}; }

  SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                          PhaseContext& ctx) const override {
    AccountRecord rec;
    rec.identity = id.value();
    server.add_account(rec);
    BigInt k = ctx.meter.h({id.as_int(), pw.text()});
    server.secrets["K:" + std::to_string(id.value())] = k;
    return SmartCard{SchemeId::Wei2012, {{"ID", id.as_int()}, {"K", k}}};
  }

  Message login_begin(SmartCard& card, const Identity&, const Password& pw, PhaseContext& ctx) const override {
    BigInt k = ctx.meter.h({card.integer("ID"), pw.text()});
    BigInt t = ctx.clock.now();
    ctx.scratch["T"] = t;
    return Message{"M_1", Role::User, Role::Server,
                   {{"ID", card.integer("ID")}, {"T", t}, {"A", ctx.meter.h({k, t})}}, 0};
  }

  ServerStep server_respond(ServerState& server, const Message& m, PhaseContext& ctx) const override {
    BigInt t = m.integer("T");
    if (!ctx.clock.is_fresh(t.convert_to<Tick>())) return Reject{"T"};
    const BigInt& k = server.secret("K:" + m.integer("ID").str());
    if (ctx.meter.h({k, t}) != m.integer("A")) return Reject{"A"};
    ctx.scratch["K"] = k;
    ctx.scratch["T"] = t;
    BigInt b = ctx.meter.h({k, m.integer("A")});
    return ServerReply{Message{"M_2", Role::Server, Role::User, {{"B", b}}, 0}, std::nullopt, false};
  }

  UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const override {
    const BigInt& k = card.integer("K");
    BigInt t = ctx.scratch_int("T");
    BigInt a = ctx.meter.h({k, t});
    if (ctx.meter.h({k, a}) != reply.integer("B")) return Reject{"B"};
    Message c{"M_3", Role::User, Role::Server, {{"C", ctx.meter.h({k, reply.integer("B")})}}, 0};
    return UserReply{c, ctx.meter.h({"sk", k, t})};
  }

  ServerFinal server_finalize(ServerState&, const Message& m, PhaseContext& ctx) const override {
    if (m.name != "M_3") return Reject{"unexpected " + m.name};
    const BigInt& k = ctx.scratch_int("K");
    BigInt t = ctx.scratch_int("T");
    BigInt b = ctx.meter.h({k, ctx.meter.h({k, t})});
    if (ctx.meter.h({k, b}) != m.integer("C")) return Reject{"C"};
    return ServerAccept{ctx.meter.h({"sk", k, t})};
  }

 private:
  SchemeMetadata meta_;
};

struct Fixture : ::testing::Test {
  std::shared_ptr<ToySuite> suite = std::make_shared<ToySuite>();
  Simulation sim{suite, 11};
  Identity id{42};
  Password pw{"hunter2"};
  SmartCard card = sim.register_user(id, pw);
};

}  // namespace

TEST(Values, IdentityAndPasswordBounds) {
  EXPECT_EQ(code_of([] { Identity(0); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([] { Identity(1u << kIdentityBits); }), ErrorCode::InvalidParameters);
  EXPECT_NO_THROW(Identity((1u << kIdentityBits) - 1));
  EXPECT_EQ(code_of([] { Password(""); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(Password("ab").as_int(), 0x6162);
}

TEST(ClockTest, FreshnessWindowIsInclusive) {
  Clock clock(5);
  clock.advance(10);
  EXPECT_TRUE(clock.is_fresh(5));
  EXPECT_FALSE(clock.is_fresh(4));
  EXPECT_TRUE(clock.is_fresh(12));
  EXPECT_EQ(code_of([&] { clock.advance(-1); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { Clock(0); }), ErrorCode::InvalidParameters);
}

TEST(MessageTest, FieldAccess) {
  Message m{"M_1", Role::User, Role::Server, {{"a", BigInt(3)}}, 0};
  EXPECT_TRUE(m.has("a"));
  EXPECT_EQ(m.integer("a"), 3);
  EXPECT_EQ(code_of([&] { m.integer("b"); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([&] { m.point("a"); }), ErrorCode::OutOfRange);
  m.set("a", BigInt(4));
  m.set("b", crypto::EcPoint::identity());
  EXPECT_EQ(m.integer("a"), 4);
  EXPECT_TRUE(m.point("b").infinity);
}

TEST(ServerStateTest, AccountsAndWatermark) {
  ServerState s{SchemeId::LeeLiu2013, {}, {}};
  AccountRecord r;
  r.identity = 7;
  s.add_account(r);
  EXPECT_EQ(code_of([&] { s.add_account(r); }), ErrorCode::DuplicateIdentity);
  EXPECT_EQ(code_of([&] { s.account(8); }), ErrorCode::UnknownIdentity);
  s.raise_watermark(7, 5);
  s.raise_watermark(7, 3);
  EXPECT_EQ(s.account(7).sn_watermark, 5u);
}

TEST(MeterTest, CountsPerOperation) {
  Meter m;
  m.h({1});
  m.h({2, 3});
  m.pow(2, 10, 1000);
  m.inv(3, 7);
  m.mul(3, crypto::toy_base_point(), crypto::toy_curve());
  m.h_point(crypto::toy_base_point());
  EXPECT_EQ(m.counters().hash_ops, 3u);
  EXPECT_EQ(m.counters().exponentiations, 1u);
  EXPECT_EQ(m.counters().inversions, 1u);
  EXPECT_EQ(m.counters().ec_multiplications, 1u);
}

TEST_F(Fixture, HonestSessionAgreesOnKeys) {
  auto r = sim.authenticate(card, id, pw, AdversaryScript::passive());
  ASSERT_TRUE(is_success(r.outcome)) << failure_step(r.outcome);
  EXPECT_TRUE(std::get<MutualAuthSuccess>(r.outcome).keys_match());
  ASSERT_EQ(r.transcript.messages.size(), 3u);
  EXPECT_EQ(r.transcript.messages_from(Role::User), 2u);
  EXPECT_EQ(r.transcript.messages_from(Role::Server), 1u);
  EXPECT_GT(r.transcript.user_counters.hash_ops, 0u);
  EXPECT_GT(r.transcript.server_counters.hash_ops, 0u);
  EXPECT_EQ(sim.adversary().observed().size(), 3u);
}

TEST_F(Fixture, WrongPasswordRejectedByServer) {
  auto r = sim.authenticate(card, id, Password("nope"));
  EXPECT_EQ(outcome_kind(r.outcome), "ServerReject");
  EXPECT_EQ(failure_step(r.outcome), "A");
  EXPECT_TRUE(r.login_emitted);
  EXPECT_FALSE(r.server_responded);
}

TEST_F(Fixture, DropAborts) {
  auto r = sim.authenticate(card, id, pw, AdversaryScript{{Drop{"M_2"}}});
  EXPECT_EQ(outcome_kind(r.outcome), "Aborted");
  EXPECT_EQ(failure_step(r.outcome), "M_2 dropped");
  EXPECT_EQ(r.transcript.messages.back().event, ChannelEvent::Dropped);
}

TEST_F(Fixture, UnobservedAdversaryRecordsNothing) {
  sim.authenticate(card, id, pw, AdversaryScript{});
  EXPECT_TRUE(sim.adversary().observed().empty());
}

TEST_F(Fixture, ReplayAfterWindowIsStale) {
  sim.authenticate(card, id, pw, AdversaryScript::passive());
  auto src = sim.adversary().latest("M_1");
  ASSERT_TRUE(src.has_value());
  sim.clock().advance(sim.clock().delta_t() + 1);
  auto stale = sim.authenticate(card, id, pw, AdversaryScript{{Replay{"M_1", *src, std::nullopt}}});
  EXPECT_EQ(failure_step(stale.outcome), "T");
  EXPECT_EQ(stale.transcript.messages.front().event, ChannelEvent::Replayed);

  // A refreshed stamp no longer matches the bound A.
  auto refreshed = sim.authenticate(card, id, pw, AdversaryScript{{Replay{"M_1", *src, "T"}}});
  EXPECT_EQ(failure_step(refreshed.outcome), "A");
}

TEST_F(Fixture, ReplayWithoutRecordingThrows) {
  EXPECT_EQ(code_of([&] { sim.authenticate(card, id, pw, AdversaryScript{{Replay{"M_1", 0, std::nullopt}}}); }),
            ErrorCode::NoRecordedSession);
}

TEST_F(Fixture, ReplaceAndInject) {
  FieldTransform bump = [](const FieldValue& v, const Message&) -> FieldValue { return BigInt(std::get<BigInt>(v) + 1); };
  auto r = sim.authenticate(card, id, pw, AdversaryScript{{Replace{"M_1", "A", bump}}});
  EXPECT_EQ(failure_step(r.outcome), "A");
  EXPECT_EQ(r.transcript.messages.front().event, ChannelEvent::Replaced);

  Message forged{"M_1", Role::Adversary, Role::Server, {{"ID", BigInt(42)}, {"T", BigInt(0)}, {"A", BigInt(1)}}, 0};
  auto i = sim.authenticate(card, id, pw, AdversaryScript{{Inject{"M_1", forged}}});
  EXPECT_EQ(outcome_kind(i.outcome), "ServerReject");
  EXPECT_EQ(i.transcript.messages.front().event, ChannelEvent::Injected);
}

TEST_F(Fixture, LatencyBeyondWindowFailsFreshness) {
  auto ok = sim.authenticate(card, id, pw, {}, SessionConfig{5});
  EXPECT_TRUE(is_success(ok.outcome));
  auto late = sim.authenticate(card, id, pw, {}, SessionConfig{6});
  EXPECT_EQ(failure_step(late.outcome), "T");
  EXPECT_EQ(code_of([&] { sim.authenticate(card, id, pw, {}, SessionConfig{-1}); }), ErrorCode::OutOfRange);
}

TEST_F(Fixture, DuplicateRegistrationAndMissingFeatures) {
  EXPECT_EQ(code_of([&] { sim.register_user(id, pw); }), ErrorCode::DuplicateIdentity);
  EXPECT_EQ(code_of([&] { sim.revoke(id, pw); }), ErrorCode::Unsupported);
  EXPECT_EQ(code_of([&] { sim.change_password(card, id, pw, Password("x")); }), ErrorCode::ServerUnreachable);
}

TEST(SimulationTest, SameSeedSameTranscripts) {
  auto run = [](std::uint64_t seed) {
    Simulation sim(std::make_shared<ToySuite>(), seed);
    SmartCard card = sim.register_user(Identity(5), Password("pw"));
    std::string out;
    for (int i = 0; i < 3; ++i) out += serialize::to_json(sim.authenticate(card, Identity(5), Password("pw")).transcript).dump();
    return out;
  };
  EXPECT_EQ(run(3), run(3));
}
