#include <algorithm>
#include <set>

#include "tmis/attacks.hpp"
#include "tmis/schemes.hpp"

namespace tmis::attacks {

using namespace protocol;

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 9> kScenarioNames = {{
    {Scenario::WrongPasswordLogin, "wrong_password_login"},
    {Scenario::WrongIdentityLogin, "wrong_identity_login"},
    {Scenario::DosViaPasswordChange, "dos_via_password_change"},
    {Scenario::TamperLogin, "tamper_login_message"},
    {Scenario::ReplayLogin, "replay_login"},
    {Scenario::TempInfoLeak, "temp_info_leak"},
    {Scenario::OfflineChangeBlocked, "offline_change_blocked"},
    {Scenario::FailureIndistinguishability, "failure_indistinguishability"},
    {Scenario::KeyAgreement, "key_agreement"},
}};

struct Victim {
  Identity id;
  Password pw;
};

Victim make_victim(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "victim"));
  auto id = static_cast<std::uint32_t>(rng.between(1, (1u << kIdentityBits) - 1));
  return {Identity(id), Password("pw-" + to_hex(rng.bits(48)))};
}

Password wrong_password(const Password& pw) { return Password(pw.text() + "#"); }
Password new_password(const Password& pw) { return Password(pw.text() + "-new"); }

Identity other_identity(const Identity& id) {
  std::uint32_t next = id.value() + 1;
  if (next >= (1u << kIdentityBits)) next = 1;
  return Identity(next);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return derive_seed(seed, trial); }

/// One suite per report; trials differ in users, nonces and account tables.
schemes::SuitePtr suite_for(SchemeId scheme, std::uint64_t seed) {
  return schemes::make_suite(scheme, derive_seed(seed, "keys"));
}

// Step shared by all trials, "mixed" when they disagree.
class StepTally {
 public:
  void add(const std::string& step) { steps_.insert(step); }
  std::string common() const {
    if (steps_.empty()) return "";
    if (steps_.size() == 1) return *steps_.begin();
    return "mixed";
  }

 private:
  std::set<std::string> steps_;
};

// Every counter a scenario can report, so that zero counts still appear.
std::vector<std::string> metric_names(Scenario scenario) {
  switch (scenario) {
    case Scenario::WrongPasswordLogin:
    case Scenario::WrongIdentityLogin:
      return {"login_emitted", "server_rejected", "rejected_after_hashing"};
    case Scenario::DosViaPasswordChange:
      return {"card_mutated", "change_rejected", "locked_out", "denial_of_service"};
    case Scenario::TamperLogin:
      return {"altered", "server_responded", "completed", "altered_and_accepted"};
    case Scenario::ReplayLogin:
      return {"server_responded", "server_rejected"};
    case Scenario::TempInfoLeak:
      return {"user_key_recovered", "server_key_recovered", "key_recovered"};
    case Scenario::OfflineChangeBlocked:
      return {"blocked", "card_unchanged", "changed_offline"};
    case Scenario::FailureIndistinguishability:
      return {"completed", "cases"};
    case Scenario::KeyAgreement:
      return {"completed", "keys_agreed"};
  }
  return {};
}

AttackReport start(SchemeId scheme, Scenario scenario, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidParameters, "trials must be at least 1");
  AttackReport report;
  for (const auto& name : metric_names(scenario)) report.metrics[name] = 0;
  report.scheme = scheme;
  report.scenario = scenario;
  report.trials = trials;
  report.seed = seed;
  return report;
}

bool emitted_login(const AuthResult& result, const SchemeSuite& suite) {
  if (!result.login_emitted) return false;
  const auto& entries = result.transcript.messages;
  return !entries.empty() && entries.front().message.name == suite.metadata().login_message;
}

std::uint64_t& metric(AttackReport& report, const std::string& name) { return report.metrics[name]; }

}  // namespace

std::string_view to_string(Scenario scenario) {
  for (const auto& [s, name] : kScenarioNames) {
    if (s == scenario) return name;
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view text) {
  for (const auto& [s, name] : kScenarioNames) {
    if (name == text) return s;
  }
  throw Error(ErrorCode::UnknownScenario, std::string(text));
}

std::string_view to_string(Tamper tamper) {
  switch (tamper) {
    case Tamper::WeiScaleBPrime: return "wei_scale_bprime";
    case Tamper::LinRehashR: return "lin_rehash_r";
    case Tamper::Identity: return "identity";
  }
  return "unknown";
}

Tamper parse_tamper(std::string_view text) {
  for (Tamper t : {Tamper::WeiScaleBPrime, Tamper::LinRehashR, Tamper::Identity}) {
    if (to_string(t) == text) return t;
  }
  throw Error(ErrorCode::UnsupportedTamper, std::string(text));
}

std::string_view to_string(Leak leak) {
  return leak == Leak::SessionNonces ? "session_nonces" : "user_nonce_only";
}

Leak parse_leak(std::string_view text) {
  if (text == "session_nonces") return Leak::SessionNonces;
  if (text == "user_nonce_only") return Leak::UserNonceOnly;
  throw Error(ErrorCode::InvalidParameters, "unknown leak set: " + std::string(text));
}

void AttackReport::tally() {
  messages_sent = 0;
  server_hash_ops = 0;
  for (const auto& t : transcripts) {
    messages_sent += t.messages.size();
    server_hash_ops += t.server_counters.hash_ops;
  }
}

// ---------------------------------------------------------------------------

namespace {

AttackReport wrong_input_login(SchemeId scheme, Scenario scenario, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  AttackReport report = start(scheme, scenario, trials, seed);
  auto suite = suite_for(scheme, seed);
  const bool wrong_id = scenario == Scenario::WrongIdentityLogin;
  if (wrong_id && suite->metadata().card_stores_identity) {
    throw Error(ErrorCode::Unsupported, std::string(to_string(scheme)) + " reads the identity from the card");
  }

  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    Identity id_input = wrong_id ? other_identity(v.id) : v.id;
    Password pw_input = wrong_id ? v.pw : wrong_password(v.pw);
    AuthResult result = sim.authenticate(card, id_input, pw_input);

    if (emitted_login(result, *suite)) ++metric(report, "login_emitted");
    if (std::holds_alternative<ServerReject>(result.outcome)) {
      ++metric(report, "server_rejected");
      if (result.transcript.server_counters.hash_ops > 0) ++metric(report, "rejected_after_hashing");
    }
    steps.add(failure_step(result.outcome));
    report.transcripts.push_back(std::move(result.transcript));
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["login_emitted"] == trials;
  report.notes.push_back("the card has no local verifier, so the wrong input is only detected by the server");
  report.tally();
  return report;
}

}  // namespace

AttackReport wrong_password_login(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  return wrong_input_login(scheme, Scenario::WrongPasswordLogin, trials, seed, delta_t);
}

AttackReport wrong_identity_login(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  return wrong_input_login(scheme, Scenario::WrongIdentityLogin, trials, seed, delta_t);
}

AttackReport dos_via_password_change(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  AttackReport report = start(scheme, Scenario::DosViaPasswordChange, trials, seed);
  auto suite = suite_for(scheme, seed);
  const std::string& slot = suite->metadata().password_slot;

  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    const SlotValue before = card.slots.at(slot);

    Password typo = wrong_password(v.pw);
    Password fresh = new_password(v.pw);
    ChangeOutcome change = sim.change_password(card, v.id, typo, fresh);
    if (change.transcript) report.transcripts.push_back(*change.transcript);
    const bool mutated = card.slots.at(slot) != before;
    if (mutated) ++metric(report, "card_mutated");
    if (change.status == ChangeOutcome::Status::Rejected) {
      ++metric(report, "change_rejected");
      steps.add(change.step);
    }

    bool locked_out = true;
    for (const Password& attempt : {v.pw, fresh}) {
      AuthResult login = sim.authenticate(card, v.id, attempt);
      if (is_success(login.outcome)) {
        locked_out = false;
      } else if (change.status == ChangeOutcome::Status::Applied) {
        steps.add(failure_step(login.outcome));
      }
      report.transcripts.push_back(std::move(login.transcript));
    }
    if (locked_out) ++metric(report, "locked_out");
    if (mutated && locked_out) ++metric(report, "denial_of_service");
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["denial_of_service"] == trials;
  report.notes.push_back("slot " + slot + " is rewritten from the typed old password without checking it");
  report.tally();
  return report;
}

namespace {

FieldTransform scale_b_prime(const BigInt& p, std::uint64_t seed) {
  return [p, seed](const FieldValue& field, const Message&) -> FieldValue {
    Rng rng(derive_seed(seed, "r_E"));
    BigInt r_e = rng.between(2, p - 1);
    return crypto::mod(std::get<BigInt>(field) * r_e, p);
  };
}

FieldTransform rehash_r() {
  return [](const FieldValue& field, const Message& m) -> FieldValue {
    return crypto::hash({std::get<BigInt>(field), m.integer("T_1")}).to_int();
  };
}

}  // namespace

AttackReport tamper_login_message(SchemeId scheme, Tamper tamper, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  if ((tamper == Tamper::WeiScaleBPrime && scheme != SchemeId::Wei2012) ||
      (tamper == Tamper::LinRehashR && scheme != SchemeId::Lin2013)) {
    throw Error(ErrorCode::UnsupportedTamper,
                std::string(to_string(tamper)) + " does not apply to " + std::string(to_string(scheme)));
  }
  AttackReport report = start(scheme, Scenario::TamperLogin, trials, seed);
  report.parameters["tamper"] = std::string(to_string(tamper));
  auto suite = suite_for(scheme, seed);
  const std::string& target = suite->metadata().login_message;

  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);

    AdversaryScript script;
    script.actions.push_back(Observe{});
    switch (tamper) {
      case Tamper::WeiScaleBPrime: {
        const BigInt& p = std::get<BigInt>(suite->public_parameters().at("p"));
        script.actions.push_back(Replace{target, "B'", scale_b_prime(p, sim.seed())});
        break;
      }
      case Tamper::LinRehashR:
        script.actions.push_back(Replace{target, "R", rehash_r()});
        break;
      case Tamper::Identity:
        break;
    }
    AuthResult result = sim.authenticate(card, v.id, v.pw, script);

    const Message& sent = sim.adversary().observed().front();
    const Message& delivered = result.transcript.messages.front().message;
    const bool altered = !(sent.fields == delivered.fields);
    if (altered) ++metric(report, "altered");
    if (result.server_responded) ++metric(report, "server_responded");
    if (is_success(result.outcome)) {
      ++metric(report, "completed");
      if (altered) ++metric(report, "altered_and_accepted");
    }
    steps.add(failure_step(result.outcome));
    report.transcripts.push_back(std::move(result.transcript));
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["altered_and_accepted"] > 0;
  if (tamper == Tamper::Identity) report.notes.push_back("control run: the transform leaves the message unchanged");
  report.tally();
  return report;
}

AttackReport replay_login(SchemeId scheme, bool refresh_timestamp, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  AttackReport report = start(scheme, Scenario::ReplayLogin, trials, seed);
  report.parameters["refresh_timestamp"] = refresh_timestamp ? "true" : "false";
  auto suite = suite_for(scheme, seed);
  const auto& meta = suite->metadata();
  std::optional<std::string> refresh;
  if (refresh_timestamp) {
    if (meta.login_timestamp_field) {
      refresh = meta.login_timestamp_field;
    } else {
      report.notes.push_back("the login carries no timestamp; the replay is sent unchanged");
    }
  }

  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);

    AuthResult recorded = sim.authenticate(card, v.id, v.pw, AdversaryScript::passive());
    auto source = sim.adversary().latest(meta.login_message);
    if (!is_success(recorded.outcome) || !source) {
      throw Error(ErrorCode::NoRecordedSession, "the honest session to replay did not complete");
    }
    sim.clock().advance(sim.clock().delta_t() + 1);

    AdversaryScript script;
    script.actions.push_back(Replay{meta.login_message, *source, refresh});
    AuthResult replayed = sim.authenticate(card, v.id, v.pw, script);
    if (replayed.server_responded) ++metric(report, "server_responded");
    if (std::holds_alternative<ServerReject>(replayed.outcome)) ++metric(report, "server_rejected");
    steps.add(failure_step(replayed.outcome));
    report.transcripts.push_back(std::move(recorded.transcript));
    report.transcripts.push_back(std::move(replayed.transcript));
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["server_responded"] > 0;
  report.notes.push_back("replayed after delta_t + 1 ticks; vulnerable means the server processed the stale login "
                         "and answered it");
  if (!meta.uses_timestamps && meta.card_stores_identity && scheme != SchemeId::LeeLiu2013) {
    report.notes.push_back("nothing in the login binds it to the current session, so the server answers the replay");
  }
  report.tally();
  return report;
}

AttackReport temp_info_leak(SchemeId scheme, Leak leak, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  if (scheme != SchemeId::CaoZhai2013 && scheme != SchemeId::Xie2013) {
    throw Error(ErrorCode::UnknownScheme, "temp_info_leak covers caozhai2013 and xie2013, not " +
                                              std::string(to_string(scheme)));
  }
  AttackReport report = start(scheme, Scenario::TempInfoLeak, trials, seed);
  report.parameters["leak"] = std::string(to_string(leak));
  auto suite = suite_for(scheme, seed);
  const bool cao = scheme == SchemeId::CaoZhai2013;
  const std::string user_nonce = cao ? "r_u" : "a";
  const std::string server_nonce = cao ? "r_s" : "b";

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    AuthResult result = sim.authenticate(card, v.id, v.pw, AdversaryScript::passive());
    if (!is_success(result.outcome)) throw Error(ErrorCode::NoRecordedSession, "honest session failed");
    const auto& keys = std::get<MutualAuthSuccess>(result.outcome);

    // The adversary's whole knowledge: the declared leak.
    std::vector<BigInt> leaked{std::get<BigInt>(result.card_scratch.at(user_nonce))};
    if (leak == Leak::SessionNonces) leaked.push_back(std::get<BigInt>(result.server_scratch.at(server_nonce)));
    BigInt guess = crypto::hash(std::vector<crypto::HashArg>(leaked.begin(), leaked.end())).to_int();
    if (keys.user_key && guess == *keys.user_key) ++metric(report, "user_key_recovered");
    if (keys.server_key && guess == *keys.server_key) ++metric(report, "server_key_recovered");
    if (keys.user_key && keys.server_key && guess == *keys.user_key && guess == *keys.server_key) {
      ++metric(report, "key_recovered");
    }
    report.transcripts.push_back(std::move(result.transcript));
  }
  report.vulnerable = report.metrics["key_recovered"] == trials;
  report.failure_step = "";
  if (cao) {
    report.notes.push_back("the session key is h(r_u || r_s) and contains no long-term secret");
    report.notes.push_back("r_s also travels in clear in M_2, so an eavesdropper needs only a leaked r_u");
  } else {
    report.notes.push_back("the key needs J^(ab) mod n; the leaked exponents alone do not determine it");
    report.notes.push_back("an eavesdropper who also sees B = J^b in M_2 gets J^(ab) = B^a from a leaked a");
  }
  report.tally();
  return report;
}

AttackReport offline_change_blocked(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  AttackReport report = start(scheme, Scenario::OfflineChangeBlocked, trials, seed);
  auto suite = suite_for(scheme, seed);
  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    const SmartCard before = card;
    Password fresh = new_password(v.pw);
    try {
      sim.change_password(card, v.id, v.pw, fresh, /*server_reachable=*/false);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ServerUnreachable) throw;
      ++metric(report, "blocked");
      steps.add(std::string(to_string(e.code())));
      if (card == before) ++metric(report, "card_unchanged");
      continue;
    }
    AuthResult login = sim.authenticate(card, v.id, fresh);
    if (is_success(login.outcome)) ++metric(report, "changed_offline");
    report.transcripts.push_back(std::move(login.transcript));
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["blocked"] > 0;
  report.tally();
  return report;
}

namespace {

/// What the user can see of a session: the messages it sent or received,
/// by position and name, and how the session ended from its side.
std::vector<std::string> user_signal(const Transcript& t) {
  std::vector<std::string> signal;
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const auto& entry = t.messages[i];
    if (entry.event == ChannelEvent::Dropped) continue;
    if (entry.message.receiver == Role::User) signal.push_back(std::to_string(i) + ":received");
    else signal.push_back(std::to_string(i) + ":sent");
  }
  if (const auto* reject = std::get_if<UserReject>(&t.outcome)) {
    signal.push_back("card rejected at " + reject->step);
  } else if (is_success(t.outcome)) {
    signal.push_back("success");
  } else {
    signal.push_back("no further reply");
  }
  return signal;
}

}  // namespace

AttackReport failure_indistinguishability(SchemeId scheme, std::uint64_t seed, Tick delta_t) {
  if (scheme != SchemeId::Wei2012 && scheme != SchemeId::Lin2013 && scheme != SchemeId::Xie2013) {
    throw Error(ErrorCode::UnknownScheme, "failure_indistinguishability covers wei2012, lin2013 and xie2013, not " +
                                              std::string(to_string(scheme)));
  }
  auto suite = suite_for(scheme, seed);
  const auto& meta = suite->metadata();

  struct Case {
    std::string label;
    std::function<AuthResult(Simulation&, SmartCard&, const Victim&)> run;
  };
  std::vector<Case> cases;
  auto wrong_pw = [](Simulation& sim, SmartCard& card, const Victim& v) {
    return sim.authenticate(card, v.id, wrong_password(v.pw));
  };
  cases.push_back({"wrong password", wrong_pw});
  if (scheme == SchemeId::Wei2012) {
    cases.push_back({"B' scaled in transit", [&](Simulation& sim, SmartCard& card, const Victim& v) {
                       const BigInt& p = std::get<BigInt>(suite->public_parameters().at("p"));
                       AdversaryScript script{{Replace{meta.login_message, "B'", scale_b_prime(p, sim.seed())}}};
                       return sim.authenticate(card, v.id, v.pw, script);
                     }});
  } else if (scheme == SchemeId::Lin2013) {
    cases.push_back({"wrong identity", [](Simulation& sim, SmartCard& card, const Victim& v) {
                       return sim.authenticate(card, other_identity(v.id), v.pw);
                     }});
    cases.push_back({"wrong identity and password", [](Simulation& sim, SmartCard& card, const Victim& v) {
                       return sim.authenticate(card, other_identity(v.id), wrong_password(v.pw));
                     }});
    cases.push_back({"R rehashed in transit", [&](Simulation& sim, SmartCard& card, const Victim& v) {
                       AdversaryScript script{{Replace{meta.login_message, "R", rehash_r()}}};
                       return sim.authenticate(card, v.id, v.pw, script);
                     }});
  } else {
    cases.push_back({"stale login replayed with a fresh timestamp",
                     [&](Simulation& sim, SmartCard& card, const Victim& v) {
                       sim.authenticate(card, v.id, v.pw, AdversaryScript::passive());
                       auto source = sim.adversary().latest(meta.login_message);
                       if (!source) throw Error(ErrorCode::NoRecordedSession, "nothing recorded");
                       sim.clock().advance(sim.clock().delta_t() + 1);
                       AdversaryScript script{{Replay{meta.login_message, *source, meta.login_timestamp_field}}};
                       return sim.authenticate(card, v.id, v.pw, script);
                     }});
  }

  AttackReport report = start(scheme, Scenario::FailureIndistinguishability, cases.size(), seed);
  std::optional<std::vector<std::string>> reference;
  bool identical = true;
  StepTally steps;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Simulation sim(suite, trial_seed(seed, i), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    AuthResult result = cases[i].run(sim, card, v);
    auto signal = user_signal(result.transcript);
    if (!reference) reference = signal;
    else if (signal != *reference) identical = false;

    std::string joined;
    for (const auto& s : signal) joined += (joined.empty() ? "" : ", ") + s;
    report.notes.push_back(cases[i].label + ": server " + std::string(outcome_kind(result.outcome)) + " at " +
                           failure_step(result.outcome) + "; user sees [" + joined + "]");
    if (is_success(result.outcome)) ++metric(report, "completed");
    steps.add(failure_step(result.outcome));
    report.transcripts.push_back(std::move(result.transcript));
  }
  report.metrics["cases"] = cases.size();
  report.failure_step = steps.common();
  report.vulnerable = identical && report.metrics["completed"] == 0;
  report.tally();
  return report;
}

AttackReport key_agreement(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, Tick delta_t) {
  AttackReport report = start(scheme, Scenario::KeyAgreement, trials, seed);
  auto suite = suite_for(scheme, seed);
  StepTally steps;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Simulation sim(suite, trial_seed(seed, trial), delta_t);
    Victim v = make_victim(sim.seed());
    SmartCard card = sim.register_user(v.id, v.pw);
    AuthResult result = sim.authenticate(card, v.id, v.pw);
    if (is_success(result.outcome)) {
      ++metric(report, "completed");
      if (std::get<MutualAuthSuccess>(result.outcome).keys_match()) ++metric(report, "keys_agreed");
    }
    steps.add(failure_step(result.outcome));
    report.transcripts.push_back(std::move(result.transcript));
  }
  report.failure_step = steps.common();
  report.vulnerable = report.metrics["keys_agreed"] != trials;
  if (!suite->metadata().defines_session_key) report.notes.push_back("the scheme authenticates without deriving a key");
  report.tally();
  return report;
}

AttackReport run_scenario(SchemeId scheme, Scenario scenario, const ScenarioOptions& o) {
  switch (scenario) {
    case Scenario::WrongPasswordLogin: return wrong_password_login(scheme, o.trials, o.seed, o.delta_t);
    case Scenario::WrongIdentityLogin: return wrong_identity_login(scheme, o.trials, o.seed, o.delta_t);
    case Scenario::DosViaPasswordChange: return dos_via_password_change(scheme, o.trials, o.seed, o.delta_t);
    case Scenario::TamperLogin: return tamper_login_message(scheme, o.tamper, o.trials, o.seed, o.delta_t);
    case Scenario::ReplayLogin: return replay_login(scheme, o.refresh_timestamp, o.trials, o.seed, o.delta_t);
    case Scenario::TempInfoLeak: return temp_info_leak(scheme, o.leak, o.trials, o.seed, o.delta_t);
    case Scenario::OfflineChangeBlocked: return offline_change_blocked(scheme, o.trials, o.seed, o.delta_t);
    case Scenario::FailureIndistinguishability: return failure_indistinguishability(scheme, o.seed, o.delta_t);
    case Scenario::KeyAgreement: return key_agreement(scheme, o.trials, o.seed, o.delta_t);
  }
  throw Error(ErrorCode::UnknownScenario, "unhandled scenario");
}

}  // namespace tmis::attacks
