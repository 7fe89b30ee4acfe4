#include <algorithm>

#include "tmis/protocol.hpp"

namespace tmis {

namespace {

constexpr std::array<std::pair<SchemeId, std::string_view>, 7> kSchemeNames = {{
    {SchemeId::Wei2012, "wei2012"},
    {SchemeId::Zhu2012, "zhu2012"},
    {SchemeId::LeeLiu2013, "leeliu2013"},
    {SchemeId::Lin2013, "lin2013"},
    {SchemeId::CaoZhai2013, "caozhai2013"},
    {SchemeId::Xie2013, "xie2013"},
    {SchemeId::Xu2014, "xu2014"},
}};

}  // namespace

std::string_view to_string(SchemeId id) {
  for (const auto& [scheme, name] : kSchemeNames) {
    if (scheme == id) return name;
  }
  return "unknown";
}

SchemeId parse_scheme_id(std::string_view text) {
  for (const auto& [scheme, name] : kSchemeNames) {
    if (name == text) return scheme;
  }
  throw Error(ErrorCode::UnknownScheme, std::string(text));
}

}  // namespace tmis

namespace tmis::protocol {

Identity::Identity(std::uint32_t value) : value_(value) {
  if (value == 0 || value >= (1u << kIdentityBits)) {
    throw Error(ErrorCode::InvalidParameters, "identity must be a non-zero " +
                                                  std::to_string(kIdentityBits) + "-bit value");
  }
}

Password::Password(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw Error(ErrorCode::InvalidParameters, "password must be non-empty");
}

BigInt Password::as_int() const { return from_bytes(Bytes(text_.begin(), text_.end())); }

Clock::Clock(Tick delta_t) : delta_t_(delta_t) {
  if (delta_t <= 0) throw Error(ErrorCode::InvalidParameters, "delta_t must be positive");
}

void Clock::advance(Tick units) {
  if (units < 0) throw Error(ErrorCode::OutOfRange, "clock cannot run backwards");
  now_ += units;
}

OpCounters& OpCounters::operator+=(const OpCounters& other) {
  hash_ops += other.hash_ops;
  exponentiations += other.exponentiations;
  ec_multiplications += other.ec_multiplications;
  inversions += other.inversions;
  return *this;
}

BigInt Meter::h(std::initializer_list<crypto::HashArg> args) {
  ++counters_.hash_ops;
  return crypto::hash(args).to_int();
}

BigInt Meter::h_point(const crypto::EcPoint& point) {
  ++counters_.hash_ops;
  if (point.infinity) return crypto::hash({"ec-identity"}).to_int();
  return crypto::hash({"ec-point", point.x, point.y}).to_int();
}

BigInt Meter::pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
  ++counters_.exponentiations;
  return crypto::mod_exp(base, exp, m);
}

BigInt Meter::inv(const BigInt& a, const BigInt& m) {
  ++counters_.inversions;
  return crypto::mod_inv(a, m);
}

crypto::EcPoint Meter::mul(const BigInt& k, const crypto::EcPoint& point, const crypto::EcCurve& curve) {
  ++counters_.ec_multiplications;
  return crypto::ec_mul(k, point, curve);
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::User: return "user";
    case Role::Server: return "server";
    case Role::Adversary: return "adversary";
  }
  return "unknown";
}

bool Message::has(std::string_view field) const {
  return std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.first == field; });
}

const FieldValue& Message::value(std::string_view field) const {
  for (const auto& [name, value] : fields) {
    if (name == field) return value;
  }
  throw Error(ErrorCode::OutOfRange, "message " + name + " has no field " + std::string(field));
}

const BigInt& Message::integer(std::string_view field) const {
  const auto* v = std::get_if<BigInt>(&value(field));
  if (v == nullptr) throw Error(ErrorCode::OutOfRange, "field " + std::string(field) + " is not an integer");
  return *v;
}

const crypto::EcPoint& Message::point(std::string_view field) const {
  const auto* v = std::get_if<crypto::EcPoint>(&value(field));
  if (v == nullptr) throw Error(ErrorCode::OutOfRange, "field " + std::string(field) + " is not a point");
  return *v;
}

void Message::set(std::string_view field, FieldValue value) {
  for (auto& [name, existing] : fields) {
    if (name == field) {
      existing = std::move(value);
      return;
    }
  }
  fields.emplace_back(std::string(field), std::move(value));
}

namespace {

template <typename T>
const T& slot_as(const SmartCard& card, std::string_view slot) {
  auto it = card.slots.find(slot);
  if (it == card.slots.end()) throw Error(ErrorCode::OutOfRange, "card has no slot " + std::string(slot));
  const auto* v = std::get_if<T>(&it->second);
  if (v == nullptr) throw Error(ErrorCode::OutOfRange, "card slot " + std::string(slot) + " has another type");
  return *v;
}

}  // namespace

const BigInt& SmartCard::integer(std::string_view slot) const { return slot_as<BigInt>(*this, slot); }
const crypto::EcPoint& SmartCard::point(std::string_view slot) const {
  return slot_as<crypto::EcPoint>(*this, slot);
}
const crypto::EcCurve& SmartCard::curve(std::string_view slot) const {
  return slot_as<crypto::EcCurve>(*this, slot);
}

std::set<std::string> SmartCard::slot_names() const {
  std::set<std::string> names;
  for (const auto& [name, value] : slots) names.insert(name);
  return names;
}

AccountRecord& ServerState::account(std::uint32_t identity) {
  auto it = accounts.find(identity);
  if (it == accounts.end()) throw Error(ErrorCode::UnknownIdentity, std::to_string(identity));
  return it->second;
}

const AccountRecord& ServerState::account(std::uint32_t identity) const {
  auto it = accounts.find(identity);
  if (it == accounts.end()) throw Error(ErrorCode::UnknownIdentity, std::to_string(identity));
  return it->second;
}

void ServerState::add_account(AccountRecord record) {
  if (has_account(record.identity)) throw Error(ErrorCode::DuplicateIdentity, std::to_string(record.identity));
  accounts.emplace(record.identity, std::move(record));
}

void ServerState::raise_watermark(std::uint32_t identity, std::uint64_t serial) {
  auto& record = account(identity);
  record.sn_watermark = std::max(record.sn_watermark, serial);
}

const BigInt& ServerState::secret(std::string_view name) const {
  auto it = secrets.find(name);
  if (it == secrets.end()) throw Error(ErrorCode::OutOfRange, "server has no secret " + std::string(name));
  return it->second;
}

std::string_view outcome_kind(const SessionOutcome& outcome) {
  struct Visitor {
    std::string_view operator()(const MutualAuthSuccess&) const { return "MutualAuthSuccess"; }
    std::string_view operator()(const ServerReject&) const { return "ServerReject"; }
    std::string_view operator()(const UserReject&) const { return "UserReject"; }
    std::string_view operator()(const Aborted&) const { return "Aborted"; }
  };
  return std::visit(Visitor{}, outcome);
}

std::string failure_step(const SessionOutcome& outcome) {
  struct Visitor {
    std::string operator()(const MutualAuthSuccess&) const { return {}; }
    std::string operator()(const ServerReject& r) const { return r.step; }
    std::string operator()(const UserReject& r) const { return r.step; }
    std::string operator()(const Aborted& a) const { return a.reason; }
  };
  return std::visit(Visitor{}, outcome);
}

std::string_view to_string(ChannelEvent event) {
  switch (event) {
    case ChannelEvent::Delivered: return "delivered";
    case ChannelEvent::Dropped: return "dropped";
    case ChannelEvent::Replaced: return "replaced";
    case ChannelEvent::Replayed: return "replayed";
    case ChannelEvent::Injected: return "injected";
  }
  return "unknown";
}

std::size_t Transcript::messages_from(Role role) const {
  return static_cast<std::size_t>(std::count_if(messages.begin(), messages.end(), [&](const auto& entry) {
    return entry.message.sender == role && entry.event != ChannelEvent::Dropped;
  }));
}

const BigInt& PhaseContext::scratch_int(std::string_view key) const {
  auto it = scratch.find(key);
  if (it == scratch.end()) throw Error(ErrorCode::OutOfRange, "no session value " + std::string(key));
  return std::get<BigInt>(it->second);
}

}  // namespace tmis::protocol
