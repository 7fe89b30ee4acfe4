#include "tmis/protocol.hpp"

namespace tmis::protocol {

ServerFinal SchemeSuite::server_finalize(ServerState&, const Message& confirm, PhaseContext&) const {
  return Reject{"unexpected " + confirm.name};
}

void SchemeSuite::change_password_offline(SmartCard&, const Identity&, const Password&, const Password&,
                                          PhaseContext&) const {
  throw Error(ErrorCode::ServerUnreachable, std::string(to_string(id())) + " changes passwords through the server");
}

std::optional<Reject> SchemeSuite::change_password_confirm(SmartCard&, const Message&, const Password&,
                                                           const Password&, PhaseContext&) const {
  throw Error(ErrorCode::Unsupported, std::string(to_string(id())) + " changes passwords offline");
}

SmartCard SchemeSuite::revoke(ServerState&, const Identity&, const Password&, PhaseContext&) const {
  throw Error(ErrorCode::Unsupported, std::string(to_string(id())) + " has no card revocation");
}

SmartCard run_registration(const SchemeSuite& suite, ServerState& server, const Identity& id,
                           const Password& pw, std::uint64_t seed) {
  if (server.has_account(id.value())) throw Error(ErrorCode::DuplicateIdentity, std::to_string(id.value()));
  Rng rng(derive_seed(seed, "registration"));
  Meter meter;
  Clock clock;
  Scratch scratch;
  PhaseContext ctx{meter, rng, clock, scratch};
  return suite.register_user(server, id, pw, ctx);
}

namespace {

// Per-session bookkeeping shared by authentication and assisted password change.
struct Session {
  Session(const SchemeSuite& suite, std::uint64_t seed, Clock& clock)
      : user_rng(derive_seed(seed, "user")),
        server_rng(derive_seed(seed, "server")),
        user{user_meter, user_rng, clock, user_scratch},
        server{server_meter, server_rng, clock, server_scratch} {
    transcript.scheme = suite.id();
    transcript.seed = seed;
  }

  void close(const SessionOutcome& outcome) {
    transcript.user_counters = user_meter.counters();
    transcript.server_counters = server_meter.counters();
    transcript.outcome = outcome;
  }

  Transcript transcript;
  Meter user_meter, server_meter;
  Rng user_rng, server_rng;
  Scratch user_scratch, server_scratch;
  PhaseContext user, server;
};

}  // namespace

AuthResult run_authentication(const SchemeSuite& suite, SmartCard& card, const Password& pw_input,
                              const Identity& id_input, ServerState& server, Adversary* adversary,
                              const AdversaryScript& script, Clock& clock, std::uint64_t seed,
                              SessionConfig config) {
  Session s(suite, seed, clock);
  Channel channel(adversary, script, clock, config.latency, s.transcript);
  AuthResult result;

  auto finish = [&](SessionOutcome outcome) {
    s.close(outcome);
    result.outcome = std::move(outcome);
    result.transcript = s.transcript;
    result.card_scratch = s.user_scratch;
    result.server_scratch = s.server_scratch;
    return result;
  };

  try {
    Message login = suite.login_begin(card, id_input, pw_input, s.user);
    result.login_emitted = true;
    auto delivered = channel.transmit(std::move(login));
    if (!delivered) return finish(Aborted{suite.metadata().login_message + " dropped"});

    ServerStep step = suite.server_respond(server, *delivered, s.server);
    if (const auto* reject = std::get_if<Reject>(&step)) return finish(ServerReject{reject->step});
    auto& reply = std::get<ServerReply>(step);
    result.server_responded = true;

    auto reply_delivered = channel.transmit(reply.message);
    if (!reply_delivered) return finish(Aborted{reply.message.name + " dropped"});

    UserStep user_step = suite.user_finalize(card, *reply_delivered, s.user);
    if (const auto* reject = std::get_if<Reject>(&user_step)) return finish(UserReject{reject->step});
    auto& user_reply = std::get<UserReply>(user_step);

    if (!user_reply.message) {
      if (!reply.completes) return finish(Aborted{"server still awaits confirmation"});
      return finish(MutualAuthSuccess{user_reply.session_key, reply.session_key});
    }

    auto confirm = channel.transmit(*user_reply.message);
    if (!confirm) return finish(Aborted{user_reply.message->name + " dropped"});
    ServerFinal final_step = suite.server_finalize(server, *confirm, s.server);
    if (const auto* reject = std::get_if<Reject>(&final_step)) return finish(ServerReject{reject->step});
    return finish(MutualAuthSuccess{user_reply.session_key, std::get<ServerAccept>(final_step).session_key});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoRecordedSession) throw;
    return finish(Aborted{std::string(to_string(e.code()))});
  }
}

ChangeOutcome run_password_change(const SchemeSuite& suite, SmartCard& card, const Identity& id_input,
                                  const Password& old_pw, const Password& new_pw, ServerState* server,
                                  Adversary* adversary, const AdversaryScript& script, Clock& clock,
                                  std::uint64_t seed) {
  const SmartCard before = card;
  ChangeOutcome outcome;

  if (!suite.metadata().change_needs_server) {
    Session s(suite, seed, clock);
    suite.change_password_offline(card, id_input, old_pw, new_pw, s.user);
    outcome.card_mutated = card != before;
    return outcome;
  }

  if (server == nullptr) {
    throw Error(ErrorCode::ServerUnreachable, std::string(to_string(suite.id())) + " needs the server to change passwords");
  }

  Session s(suite, seed, clock);
  Channel channel(adversary, script, clock, 0, s.transcript);
  auto reject = [&](std::string step) {
    s.close(ServerReject{step});
    outcome.status = ChangeOutcome::Status::Rejected;
    outcome.step = std::move(step);
    outcome.card_mutated = card != before;
    outcome.transcript = s.transcript;
    return outcome;
  };

  Message login = suite.login_begin(card, id_input, old_pw, s.user);
  auto delivered = channel.transmit(std::move(login));
  if (!delivered) return reject(suite.metadata().login_message + " dropped");
  ServerStep step = suite.server_respond(*server, *delivered, s.server);
  if (const auto* r = std::get_if<Reject>(&step)) return reject(r->step);
  auto reply = channel.transmit(std::get<ServerReply>(step).message);
  if (!reply) return reject("reply dropped");
  if (auto r = suite.change_password_confirm(card, *reply, old_pw, new_pw, s.user)) {
    s.close(UserReject{r->step});
    outcome.status = ChangeOutcome::Status::Rejected;
    outcome.step = r->step;
    outcome.card_mutated = card != before;
    outcome.transcript = s.transcript;
    return outcome;
  }
  s.close(MutualAuthSuccess{});
  outcome.card_mutated = card != before;
  outcome.transcript = s.transcript;
  return outcome;
}

SmartCard run_revocation(const SchemeSuite& suite, ServerState& server, const Identity& id, const Password& pw,
                         std::uint64_t seed) {
  if (!suite.metadata().supports_revocation) {
    throw Error(ErrorCode::Unsupported, std::string(to_string(suite.id())) + " has no card revocation");
  }
  if (!server.has_account(id.value())) throw Error(ErrorCode::UnknownIdentity, std::to_string(id.value()));
  Rng rng(derive_seed(seed, "revocation"));
  Meter meter;
  Clock clock;
  Scratch scratch;
  PhaseContext ctx{meter, rng, clock, scratch};
  return suite.revoke(server, id, pw, ctx);
}

Simulation::Simulation(std::shared_ptr<const SchemeSuite> suite, std::uint64_t seed, Tick delta_t)
    : suite_(std::move(suite)), seed_(seed), server_(suite_->make_server()), clock_(delta_t) {}

SmartCard Simulation::register_user(const Identity& id, const Password& pw) {
  return run_registration(*suite_, server_, id, pw, next_seed());
}

AuthResult Simulation::authenticate(SmartCard& card, const Identity& id_input, const Password& pw_input,
                                    const AdversaryScript& script, SessionConfig config) {
  return run_authentication(*suite_, card, pw_input, id_input, server_, &adversary_, script, clock_, next_seed(),
                            config);
}

ChangeOutcome Simulation::change_password(SmartCard& card, const Identity& id_input, const Password& old_pw,
                                          const Password& new_pw, bool server_reachable) {
  return run_password_change(*suite_, card, id_input, old_pw, new_pw, server_reachable ? &server_ : nullptr,
                             &adversary_, AdversaryScript{}, clock_, next_seed());
}

SmartCard Simulation::revoke(const Identity& id, const Password& pw) {
  return run_revocation(*suite_, server_, id, pw, next_seed());
}

}  // namespace tmis::protocol
