#pragma once

// Scripted attack scenarios. Each produces an AttackReport whose verdict is
// computed from the executed sessions; the attribute matrix is derived from
// these reports.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmis/protocol.hpp"

namespace tmis::attacks {

inline constexpr protocol::Tick kDefaultDeltaT = 5;

enum class Scenario {
  WrongPasswordLogin,
  WrongIdentityLogin,
  DosViaPasswordChange,
  TamperLogin,
  ReplayLogin,
  TempInfoLeak,
  OfflineChangeBlocked,
  FailureIndistinguishability,
  KeyAgreement,
};

inline constexpr std::array<Scenario, 9> kAllScenarios = {
    Scenario::WrongPasswordLogin,   Scenario::WrongIdentityLogin, Scenario::DosViaPasswordChange,
    Scenario::TamperLogin,          Scenario::ReplayLogin,        Scenario::TempInfoLeak,
    Scenario::OfflineChangeBlocked, Scenario::FailureIndistinguishability, Scenario::KeyAgreement,
};

/// snake_case names, e.g. "dos_via_password_change".
std::string_view to_string(Scenario scenario);
/// Throws UnknownScenario.
Scenario parse_scenario(std::string_view text);

enum class Tamper { WeiScaleBPrime, LinRehashR, Identity };
std::string_view to_string(Tamper tamper);
/// Throws UnsupportedTamper.
Tamper parse_tamper(std::string_view text);

/// Which session temporaries are handed to the adversary.
enum class Leak { SessionNonces, UserNonceOnly };
std::string_view to_string(Leak leak);
Leak parse_leak(std::string_view text);

struct AttackReport {
  SchemeId scheme = SchemeId::Wei2012;
  Scenario scenario = Scenario::WrongPasswordLogin;
  bool vulnerable = false;
  std::string failure_step;    // common rejection step across trials; "mixed" if they differ
  std::uint64_t messages_sent = 0;
  std::uint64_t server_hash_ops = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;  // scenario options
  std::map<std::string, std::uint64_t> metrics;    // per-scenario trial counts
  std::vector<std::string> notes;
  std::vector<protocol::Transcript> transcripts;

  /// Recomputes messages_sent and server_hash_ops from the transcripts.
  void tally();
};

/// Wrong password at the card, correct identity everywhere else. Vulnerable
/// iff the card emitted a full login message in every trial.
AttackReport wrong_password_login(SchemeId scheme, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Correct password, unregistered identity typed at the card. Only for schemes
/// where the user types the identity; others throw Unsupported.
AttackReport wrong_identity_login(SchemeId scheme, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Wrong-old-password change followed by logins with the old and the new
/// password. Vulnerable iff every trial mutated the card and locked the user out.
AttackReport dos_via_password_change(SchemeId scheme, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Rewrites a field of the login message in transit. Vulnerable iff the
/// server accepted a login that was actually altered. Throws UnsupportedTamper
/// when the transform does not belong to the scheme.
AttackReport tamper_login_message(SchemeId scheme, Tamper tamper, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Records an honest session, lets delta_t pass, then substitutes the recorded
/// login for a fresh one. Vulnerable iff the server answered the stale login.
AttackReport replay_login(SchemeId scheme, bool refresh_timestamp, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Adversary receives declared session temporaries and nothing else, and tries
/// h(leaked values) as the session key. Supported: caozhai2013, xie2013.
AttackReport temp_info_leak(SchemeId scheme, Leak leak, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Correct-password change with the server unreachable. Vulnerable iff the
/// card cannot change the password on its own.
AttackReport offline_change_blocked(SchemeId scheme, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Compares user-observable failure signals across distinct failure causes.
/// Supported: wei2012, lin2013, xie2013.
AttackReport failure_indistinguishability(SchemeId scheme, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);
/// Honest sessions; vulnerable iff some run ends without equal keys on both sides.
AttackReport key_agreement(SchemeId scheme, std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);

struct ScenarioOptions {
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Tamper tamper = Tamper::Identity;
  bool refresh_timestamp = false;
  Leak leak = Leak::SessionNonces;
  protocol::Tick delta_t = kDefaultDeltaT;
};

/// Dispatches to the scenario functions above.
AttackReport run_scenario(SchemeId scheme, Scenario scenario, const ScenarioOptions& options);

// ---------------------------------------------------------------------------
// Published expectations

struct Expectation {
  bool vulnerable;
  std::optional<std::string> failure_step;
};

/// The verdict the published analysis predicts for a report's scheme,
/// scenario and parameters, if it predicts one.
std::optional<Expectation> published_expectation(const AttackReport& report);
/// True when no expectation exists or the report agrees with it.
bool agrees_with_publication(const AttackReport& report);

// ---------------------------------------------------------------------------
// Security-attribute matrix

enum class Mark { Yes, No, NotApplicable };
/// "✓", "×", "−".
std::string_view symbol(Mark mark);
std::string_view to_string(Mark mark);  // "yes", "no", "n/a"

struct MatrixCell {
  Mark mark = Mark::NotApplicable;
  Mark published = Mark::NotApplicable;
  std::vector<std::size_t> evidence;  // indices into Matrix::reports
};

struct MatrixRow {
  std::string attribute;
  bool simulated = false;  // false: copied from the published comparison
  std::array<MatrixCell, 7> cells;  // kAllSchemes order
};

struct Mismatch {
  std::string attribute;
  SchemeId scheme;
  Mark derived;
  Mark published;
};

struct Matrix {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<MatrixRow> rows;
  std::vector<AttackReport> reports;

  std::vector<Mismatch> mismatches() const;
  bool matches_publication() const { return mismatches().empty(); }
  const MatrixRow& row(std::string_view attribute) const;
};

/// The published comparison for the seven schemes, all eight attributes.
const std::vector<MatrixRow>& published_table();

/// Runs every evidence scenario for all seven schemes (schemes in parallel).
Matrix attribute_matrix(std::uint64_t trials, std::uint64_t seed,
    protocol::Tick delta_t = kDefaultDeltaT);

}  // namespace tmis::attacks
