#include <future>

#include "tmis/attacks.hpp"

namespace tmis::attacks {

namespace {

constexpr std::string_view kUserAnonymity = "User anonymity";
constexpr std::string_view kInsider = "Insider attack";
constexpr std::string_view kReplay = "Replay attack";
constexpr std::string_view kKeyAgreement = "Session key agreement";
constexpr std::string_view kKeyVerification = "Session key verification";
constexpr std::string_view kEfficientChange = "Efficient password change";
constexpr std::string_view kFriendlyChange = "User-friendly password change";
constexpr std::string_view kEfficientLogin = "Efficient login";

constexpr Mark Y = Mark::Yes;
constexpr Mark N = Mark::No;
constexpr Mark NA = Mark::NotApplicable;

MatrixRow published_row(std::string_view attribute, bool simulated, std::array<Mark, 7> marks) {
  MatrixRow row;
  row.attribute = std::string(attribute);
  row.simulated = simulated;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    row.cells[i].mark = marks[i];
    row.cells[i].published = marks[i];
  }
  return row;
}

std::size_t column(SchemeId scheme) {
  for (std::size_t i = 0; i < kAllSchemes.size(); ++i) {
    if (kAllSchemes[i] == scheme) return i;
  }
  throw Error(ErrorCode::UnknownScheme, "scheme has no matrix column");
}

Mark published_mark(std::string_view attribute, SchemeId scheme) {
  for (const auto& row : published_table()) {
    if (row.attribute == attribute) return row.cells[column(scheme)].published;
  }
  throw Error(ErrorCode::InvalidParameters, "no such attribute: " + std::string(attribute));
}

Mark mark_of(bool holds) { return holds ? Mark::Yes : Mark::No; }

}  // namespace

std::string_view symbol(Mark mark) {
  switch (mark) {
    case Mark::Yes: return "✓";
    case Mark::No: return "×";
    case Mark::NotApplicable: return "−";
  }
  return "?";
}

std::string_view to_string(Mark mark) {
  switch (mark) {
    case Mark::Yes: return "yes";
    case Mark::No: return "no";
    case Mark::NotApplicable: return "n/a";
  }
  return "?";
}

const std::vector<MatrixRow>& published_table() {
  // Columns follow kAllSchemes: wei, zhu, leeliu, lin, caozhai, xie, xu.
  static const std::vector<MatrixRow> table = {
      published_row(kUserAnonymity, false, {N, N, Y, Y, Y, Y, Y}),
      published_row(kInsider, false, {Y, Y, Y, Y, Y, Y, Y}),
      published_row(kReplay, true, {Y, Y, Y, Y, N, Y, Y}),
      published_row(kKeyAgreement, true, {Y, N, Y, Y, Y, Y, Y}),
      published_row(kKeyVerification, false, {Y, NA, Y, N, Y, N, Y}),
      published_row(kEfficientChange, true, {N, N, N, N, Y, N, N}),
      published_row(kFriendlyChange, true, {N, N, N, Y, N, Y, Y}),
      published_row(kEfficientLogin, true, {N, N, N, N, N, N, N}),
  };
  return table;
}

std::optional<Expectation> published_expectation(const AttackReport& r) {
  const SchemeId s = r.scheme;
  auto param = [&](const std::string& key) {
    auto it = r.parameters.find(key);
    return it == r.parameters.end() ? std::string() : it->second;
  };
  switch (r.scenario) {
    case Scenario::WrongPasswordLogin: {
      static const std::array<std::string_view, 7> steps = {"h_1", "h_1", "h_1", "CID", "J", "C_1", "F"};
      return Expectation{true, std::string(steps[column(s)])};
    }
    case Scenario::WrongIdentityLogin:
      if (s == SchemeId::Lin2013) return Expectation{true, "CID"};
      if (s == SchemeId::CaoZhai2013) return Expectation{true, "ID"};
      if (s == SchemeId::Xu2014) return Expectation{true, "F"};
      return std::nullopt;
    case Scenario::DosViaPasswordChange:
      return Expectation{published_mark(kEfficientChange, s) == Mark::No, std::nullopt};
    case Scenario::TamperLogin: {
      std::string tamper = param("tamper");
      if (tamper == "wei_scale_bprime") return Expectation{false, "h_1"};
      if (tamper == "lin_rehash_r") return Expectation{false, "R"};
      return Expectation{false, ""};
    }
    case Scenario::ReplayLogin: {
      Expectation e{published_mark(kReplay, s) == Mark::No, std::nullopt};
      if (s == SchemeId::LeeLiu2013) e.failure_step = "SN";
      if (s == SchemeId::Xie2013) e.failure_step = param("refresh_timestamp") == "true" ? "C_1" : "T_u";
      return e;
    }
    case Scenario::TempInfoLeak:
      if (s == SchemeId::CaoZhai2013) return Expectation{param("leak") != "user_nonce_only", std::nullopt};
      if (s == SchemeId::Xie2013) return Expectation{false, std::nullopt};
      return std::nullopt;
    case Scenario::OfflineChangeBlocked:
      return Expectation{published_mark(kFriendlyChange, s) == Mark::No, std::nullopt};
    case Scenario::FailureIndistinguishability:
      return Expectation{true, std::nullopt};
    case Scenario::KeyAgreement:
      return Expectation{published_mark(kKeyAgreement, s) == Mark::No, std::nullopt};
  }
  return std::nullopt;
}

bool agrees_with_publication(const AttackReport& report) {
  auto expected = published_expectation(report);
  if (!expected) return true;
  if (expected->vulnerable != report.vulnerable) return false;
  return !expected->failure_step || *expected->failure_step == report.failure_step;
}

std::vector<Mismatch> Matrix::mismatches() const {
  std::vector<Mismatch> out;
  for (const auto& row : rows) {
    if (!row.simulated) continue;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (row.cells[i].mark != row.cells[i].published) {
        out.push_back({row.attribute, kAllSchemes[i], row.cells[i].mark, row.cells[i].published});
      }
    }
  }
  return out;
}

const MatrixRow& Matrix::row(std::string_view attribute) const {
  for (const auto& r : rows) {
    if (r.attribute == attribute) return r;
  }
  throw Error(ErrorCode::InvalidParameters, "no such attribute: " + std::string(attribute));
}

namespace {

struct SchemeEvidence {
  std::vector<AttackReport> replay;
  AttackReport keys;
  AttackReport dos;
  AttackReport offline;
  AttackReport login;
};

SchemeEvidence gather(SchemeId scheme, std::uint64_t trials, std::uint64_t seed, protocol::Tick delta_t) {
  const std::uint64_t s = derive_seed(seed, to_string(scheme));
  SchemeEvidence e{{},
                   key_agreement(scheme, trials, s, delta_t),
                   dos_via_password_change(scheme, trials, s, delta_t),
                   offline_change_blocked(scheme, trials, s, delta_t),
                   wrong_password_login(scheme, trials, s, delta_t)};
  e.replay.push_back(replay_login(scheme, false, trials, s, delta_t));
  e.replay.push_back(replay_login(scheme, true, trials, s, delta_t));
  return e;
}

}  // namespace

Matrix attribute_matrix(std::uint64_t trials, std::uint64_t seed, protocol::Tick delta_t) {
  if (trials == 0) throw Error(ErrorCode::InvalidParameters, "trials must be at least 1");
  std::vector<std::future<SchemeEvidence>> jobs;
  for (SchemeId scheme : kAllSchemes) {
    jobs.push_back(std::async(std::launch::async, gather, scheme, trials, seed, delta_t));
  }

  Matrix m;
  m.trials = trials;
  m.seed = seed;
  m.rows = published_table();
  auto cell = [&](std::string_view attribute, std::size_t col) -> MatrixCell& {
    for (auto& r : m.rows) {
      if (r.attribute == attribute) return r.cells[col];
    }
    throw Error(ErrorCode::InvalidParameters, "no such attribute");
  };
  auto attach = [&](MatrixCell& c, AttackReport report) {
    c.evidence.push_back(m.reports.size());
    m.reports.push_back(std::move(report));
  };

  for (std::size_t col = 0; col < jobs.size(); ++col) {
    SchemeEvidence e = jobs[col].get();

    MatrixCell& replay = cell(kReplay, col);
    bool resisted = true;
    for (auto& r : e.replay) {
      resisted = resisted && !r.vulnerable;
      attach(replay, std::move(r));
    }
    replay.mark = mark_of(resisted);

    MatrixCell& keys = cell(kKeyAgreement, col);
    keys.mark = mark_of(!e.keys.vulnerable);
    attach(keys, std::move(e.keys));

    MatrixCell& efficient_change = cell(kEfficientChange, col);
    efficient_change.mark = mark_of(e.dos.metrics["card_mutated"] == 0);
    attach(efficient_change, std::move(e.dos));

    MatrixCell& friendly = cell(kFriendlyChange, col);
    friendly.mark = mark_of(!e.offline.vulnerable);
    attach(friendly, std::move(e.offline));

    MatrixCell& login = cell(kEfficientLogin, col);
    login.mark = mark_of(!e.login.vulnerable);
    attach(login, std::move(e.login));
  }
  return m;
}

}  // namespace tmis::attacks
