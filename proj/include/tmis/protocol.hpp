#pragma once

// Three-party protocol framework: smart card, server, and an adversary that
// controls the public channel. Drivers run any SchemeSuite through its phases
// and record a transcript with per-actor computation counters.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tmis/bigint.hpp"
#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"
#include "tmis/rng.hpp"

namespace tmis {

enum class SchemeId { Wei2012, Zhu2012, LeeLiu2013, Lin2013, CaoZhai2013, Xie2013, Xu2014 };

inline constexpr std::array<SchemeId, 7> kAllSchemes = {
    SchemeId::Wei2012,     SchemeId::Zhu2012, SchemeId::LeeLiu2013, SchemeId::Lin2013,
    SchemeId::CaoZhai2013, SchemeId::Xie2013, SchemeId::Xu2014,
};

/// Stable identifiers: wei2012, zhu2012, leeliu2013, lin2013, caozhai2013, xie2013, xu2014.
std::string_view to_string(SchemeId id);
/// Throws UnknownScheme.
SchemeId parse_scheme_id(std::string_view text);

}  // namespace tmis

namespace tmis::protocol {

// Slot widths used whenever values are concatenated inside an exponentiation.
inline constexpr unsigned kIdentityBits = 16;
inline constexpr unsigned kCardNumberBits = 16;
inline constexpr unsigned kCounterBits = 16;
inline constexpr unsigned kNonceBits = 32;
inline constexpr unsigned kHashFieldBits = 32;

class Identity {
 public:
  /// Throws InvalidParameters unless 0 < value < 2^kIdentityBits.
  explicit Identity(std::uint32_t value);

  std::uint32_t value() const noexcept { return value_; }
  BigInt as_int() const { return value_; }

  friend auto operator<=>(const Identity&, const Identity&) = default;

 private:
  std::uint32_t value_;
};

class Password {
 public:
  /// Throws InvalidParameters for an empty password.
  explicit Password(std::string text);

  const std::string& text() const noexcept { return text_; }
  /// Big-endian reading of the password bytes, for XOR-style equations.
  BigInt as_int() const;

  friend bool operator==(const Password&, const Password&) = default;

 private:
  std::string text_;
};

// ---------------------------------------------------------------------------
// Logical time

using Tick = std::int64_t;

class Clock {
 public:
  /// Throws InvalidParameters unless delta_t > 0.
  explicit Clock(Tick delta_t = 5);

  Tick now() const noexcept { return now_; }
  Tick delta_t() const noexcept { return delta_t_; }
  /// Throws OutOfRange for negative units.
  void advance(Tick units);
  /// receive_time - stamp <= delta_t, evaluated at the current time.
  bool is_fresh(Tick stamp) const noexcept { return now_ - stamp <= delta_t_; }

 private:
  Tick now_ = 0;
  Tick delta_t_;
};

// ---------------------------------------------------------------------------
// Computation counters

struct OpCounters {
  std::uint64_t hash_ops = 0;
  std::uint64_t exponentiations = 0;
  std::uint64_t ec_multiplications = 0;
  std::uint64_t inversions = 0;

  OpCounters& operator+=(const OpCounters& other);
  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

/// Crypto calls made by one actor go through its Meter so that the transcript
/// can report how much work each side performed.
class Meter {
 public:
  BigInt h(std::initializer_list<crypto::HashArg> args);
  /// h_1 over an elliptic-curve point (affine x || y; the identity has its own tag).
  BigInt h_point(const crypto::EcPoint& point);
  BigInt pow(const BigInt& base, const BigInt& exp, const BigInt& m);
  BigInt inv(const BigInt& a, const BigInt& m);
  crypto::EcPoint mul(const BigInt& k, const crypto::EcPoint& point, const crypto::EcCurve& curve);

  const OpCounters& counters() const noexcept { return counters_; }

 private:
  OpCounters counters_;
};

// ---------------------------------------------------------------------------
// Messages

enum class Role { User, Server, Adversary };
std::string_view to_string(Role role);

using FieldValue = std::variant<BigInt, crypto::EcPoint>;

struct Message {
  std::string name;
  Role sender = Role::User;
  Role receiver = Role::Server;
  std::vector<std::pair<std::string, FieldValue>> fields;
  Tick sent_at = 0;

  bool has(std::string_view field) const;
  /// Throw OutOfRange if the field is missing or of the other kind.
  const BigInt& integer(std::string_view field) const;
  const crypto::EcPoint& point(std::string_view field) const;
  const FieldValue& value(std::string_view field) const;
  void set(std::string_view field, FieldValue value);

  friend bool operator==(const Message&, const Message&) = default;
};

// ---------------------------------------------------------------------------
// Card and server state

using SlotValue = std::variant<BigInt, crypto::EcPoint, crypto::EcCurve>;

struct SmartCard {
  SchemeId scheme;
  std::map<std::string, SlotValue, std::less<>> slots;

  const BigInt& integer(std::string_view slot) const;
  const crypto::EcPoint& point(std::string_view slot) const;
  const crypto::EcCurve& curve(std::string_view slot) const;
  std::set<std::string> slot_names() const;

  friend bool operator==(const SmartCard&, const SmartCard&) = default;
};

struct AccountRecord {
  std::uint32_t identity = 0;
  std::uint64_t counter_n = 0;                // registration/revocation counter N
  std::optional<std::uint64_t> card_number;   // SC
  Bytes rid;                                  // E_X(ID, N, SC)
  std::uint64_t sn_watermark = 0;             // highest accepted card serial number
};

struct ServerState {
  SchemeId scheme;
  std::map<std::string, BigInt, std::less<>> secrets;
  std::map<std::uint32_t, AccountRecord> accounts;

  bool has_account(std::uint32_t identity) const { return accounts.contains(identity); }
  /// Throws UnknownIdentity.
  AccountRecord& account(std::uint32_t identity);
  const AccountRecord& account(std::uint32_t identity) const;
  /// Throws DuplicateIdentity.
  void add_account(AccountRecord record);
  /// Raises the serial-number watermark; never lowers it.
  void raise_watermark(std::uint32_t identity, std::uint64_t serial);
  const BigInt& secret(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Session outcome and transcript

struct MutualAuthSuccess {
  std::optional<BigInt> user_key;
  std::optional<BigInt> server_key;

  bool keys_established() const { return user_key.has_value() && server_key.has_value(); }
  bool keys_match() const { return keys_established() && *user_key == *server_key; }
};
struct ServerReject {
  std::string step;
};
struct UserReject {
  std::string step;
};
struct Aborted {
  std::string reason;
};

using SessionOutcome = std::variant<MutualAuthSuccess, ServerReject, UserReject, Aborted>;

std::string_view outcome_kind(const SessionOutcome& outcome);
/// Rejection step or abort reason; empty for success.
std::string failure_step(const SessionOutcome& outcome);
inline bool is_success(const SessionOutcome& outcome) {
  return std::holds_alternative<MutualAuthSuccess>(outcome);
}

enum class ChannelEvent { Delivered, Dropped, Replaced, Replayed, Injected };
std::string_view to_string(ChannelEvent event);

struct TranscriptEntry {
  Message message;  // as delivered to the receiver
  ChannelEvent event = ChannelEvent::Delivered;
  Tick received_at = 0;
};

struct Transcript {
  SchemeId scheme;
  std::uint64_t seed = 0;
  std::vector<TranscriptEntry> messages;
  OpCounters user_counters;
  OpCounters server_counters;
  SessionOutcome outcome = Aborted{"not run"};

  std::size_t messages_from(Role role) const;
};

// ---------------------------------------------------------------------------
// Adversary

/// Field rewrite applied in transit. Only the message itself is visible to it;
/// card slots and server secrets are out of reach by construction.
using FieldTransform = std::function<FieldValue(const FieldValue& field, const Message& message)>;

struct Observe {};
struct Drop {
  std::string target;
};
/// Replaces the in-flight `target` message with observed message `source`,
/// optionally stamping `refresh_field` with the current time.
struct Replay {
  std::string target;
  std::size_t source = 0;
  std::optional<std::string> refresh_field;
};
struct Replace {
  std::string target;
  std::string field;
  FieldTransform transform;
};
struct Inject {
  std::string target;
  Message message;
};

using ChannelAction = std::variant<Observe, Drop, Replay, Replace, Inject>;

struct AdversaryScript {
  std::vector<ChannelAction> actions;

  bool observes() const;
  static AdversaryScript passive() { return AdversaryScript{{Observe{}}}; }
};

/// Observation log that persists across sessions.
class Adversary {
 public:
  const std::vector<Message>& observed() const noexcept { return observed_; }
  void record(const Message& message) { observed_.push_back(message); }
  /// Index of the most recent observed message named `name`.
  std::optional<std::size_t> latest(std::string_view name) const;

 private:
  std::vector<Message> observed_;
};

/// Public channel between card and server. Every message passes the adversary
/// script; registration and revocation never use it.
class Channel {
 public:
  Channel(Adversary* adversary, const AdversaryScript& script, Clock& clock, Tick latency,
          Transcript& transcript);

  /// Returns the message the receiver gets, or nothing if it was dropped.
  /// Throws NoRecordedSession for a Replay of a message never observed.
  std::optional<Message> transmit(Message message);

 private:
  Adversary* adversary_;
  const AdversaryScript& script_;
  Clock& clock_;
  Tick latency_;
  Transcript& transcript_;
};

// ---------------------------------------------------------------------------
// Scheme interface

using Scratch = std::map<std::string, FieldValue, std::less<>>;

/// What one actor can use while executing a phase.
struct PhaseContext {
  Meter& meter;
  Rng& rng;
  const Clock& clock;
  Scratch& scratch;

  const BigInt& scratch_int(std::string_view key) const;
};

struct Reject {
  std::string step;
};
struct ServerReply {
  Message message;
  std::optional<BigInt> session_key;
  bool completes = false;  // server regards the user as authenticated once this is sent
};
struct UserReply {
  std::optional<Message> message;
  std::optional<BigInt> session_key;
};
struct ServerAccept {
  std::optional<BigInt> session_key;
};

using ServerStep = std::variant<ServerReply, Reject>;
using UserStep = std::variant<UserReply, Reject>;
using ServerFinal = std::variant<ServerAccept, Reject>;

struct SchemeMetadata {
  bool defines_session_key = true;
  bool uses_timestamps = false;
  bool card_stores_identity = false;
  bool change_needs_server = false;
  bool supports_revocation = false;
  /// Name of the first login message and its timestamp field, if any.
  std::string login_message = "M_1";
  std::optional<std::string> login_timestamp_field;
  /// The card slot a password change rewrites.
  std::string password_slot;
};

class SchemeSuite {
 public:
  virtual ~SchemeSuite() = default;

  virtual SchemeId id() const = 0;
  virtual const SchemeMetadata& metadata() const = 0;
  /// Values any party (including the adversary) may know.
  virtual std::map<std::string, FieldValue> public_parameters() const = 0;
  virtual ServerState make_server() const = 0;

  /// Runs over the secure registration channel. Throws DuplicateIdentity.
  virtual SmartCard register_user(ServerState& server, const Identity& id, const Password& pw,
                                  PhaseContext& ctx) const = 0;
  /// Card side of the login; the card never checks its inputs.
  virtual Message login_begin(SmartCard& card, const Identity& id_input, const Password& pw_input,
                              PhaseContext& ctx) const = 0;
  virtual ServerStep server_respond(ServerState& server, const Message& login, PhaseContext& ctx) const = 0;
  virtual UserStep user_finalize(const SmartCard& card, const Message& reply, PhaseContext& ctx) const = 0;
  virtual ServerFinal server_finalize(ServerState& server, const Message& confirm, PhaseContext& ctx) const;

  /// Offline change; mutates the card whatever the old password was.
  virtual void change_password_offline(SmartCard& card, const Identity& id_input, const Password& old_pw,
                                       const Password& new_pw, PhaseContext& ctx) const;
  /// Server-assisted change: given the server's reply to the login that the
  /// change started with, verify it and rewrite the card, or reject.
  virtual std::optional<Reject> change_password_confirm(SmartCard& card, const Message& reply,
                                                        const Password& old_pw, const Password& new_pw,
                                                        PhaseContext& ctx) const;
  /// Lost-card revocation over the secure channel. Throws UnknownIdentity.
  virtual SmartCard revoke(ServerState& server, const Identity& id, const Password& pw,
                           PhaseContext& ctx) const;
};

// ---------------------------------------------------------------------------
// Drivers

struct SessionConfig {
  Tick latency = 0;  // ticks added per hop
};

struct AuthResult {
  SessionOutcome outcome;
  Transcript transcript;
  Scratch card_scratch;    // session temporaries, exposed only for declared leaks and tests
  Scratch server_scratch;
  bool login_emitted = false;
  bool server_responded = false;
};

struct ChangeOutcome {
  enum class Status { Applied, Rejected };
  Status status = Status::Applied;
  std::string step;           // rejection step when Rejected
  bool card_mutated = false;
  std::optional<Transcript> transcript;  // server-assisted changes only
};

SmartCard run_registration(const SchemeSuite& suite, ServerState& server, const Identity& id,
                           const Password& pw, std::uint64_t seed);

AuthResult run_authentication(const SchemeSuite& suite, SmartCard& card, const Password& pw_input,
                              const Identity& id_input, ServerState& server, Adversary* adversary,
                              const AdversaryScript& script, Clock& clock, std::uint64_t seed,
                              SessionConfig config = {});

/// `server` may be null for schemes that change passwords offline; for the
/// others a null server throws ServerUnreachable.
ChangeOutcome run_password_change(const SchemeSuite& suite, SmartCard& card, const Identity& id_input,
                                  const Password& old_pw, const Password& new_pw, ServerState* server,
                                  Adversary* adversary, const AdversaryScript& script, Clock& clock,
                                  std::uint64_t seed);

/// Throws UnknownIdentity, or Unsupported for schemes without revocation.
SmartCard run_revocation(const SchemeSuite& suite, ServerState& server, const Identity& id,
                         const Password& pw, std::uint64_t seed);

/// One server, one clock, one adversary; every call draws a fresh derived
/// seed so whole scenarios replay bit-for-bit from the initial seed.
class Simulation {
 public:
  Simulation(std::shared_ptr<const SchemeSuite> suite, std::uint64_t seed, Tick delta_t = 5);

  const SchemeSuite& suite() const noexcept { return *suite_; }
  ServerState& server() noexcept { return server_; }
  Clock& clock() noexcept { return clock_; }
  Adversary& adversary() noexcept { return adversary_; }
  std::uint64_t seed() const noexcept { return seed_; }

  SmartCard register_user(const Identity& id, const Password& pw);
  AuthResult authenticate(SmartCard& card, const Identity& id_input, const Password& pw_input,
                          const AdversaryScript& script = {}, SessionConfig config = {});
  ChangeOutcome change_password(SmartCard& card, const Identity& id_input, const Password& old_pw,
                                const Password& new_pw, bool server_reachable = true);
  SmartCard revoke(const Identity& id, const Password& pw);

 private:
  std::uint64_t next_seed() { return derive_seed(seed_, counter_++); }

  std::shared_ptr<const SchemeSuite> suite_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  ServerState server_;
  Clock clock_;
  Adversary adversary_;
};

}  // namespace tmis::protocol
