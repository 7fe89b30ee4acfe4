// tmis_lab: run honest sessions, attack scenarios and the attribute matrix.
//
// Exit codes: 0 expected verdict, 2 verdict differs from the published
// analysis, 1 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tmis/attacks.hpp"
#include "tmis/schemes.hpp"
#include "tmis/serialize.hpp"

namespace {

using namespace tmis;

constexpr int kExpected = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

struct Config {
  std::string scheme;
  std::string scenario;
  std::uint64_t trials = 100;
  std::optional<std::uint64_t> seed;
  protocol::Tick delta_t = attacks::kDefaultDeltaT;
  std::string format = "text";
  std::string tamper = "identity";
  bool refresh_timestamp = false;
  std::string leak = "session_nonces";
};

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("TMIS_LAB_SEED")) {
    try {
      std::size_t used = 0;
      std::uint64_t value = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("TMIS_LAB_SEED", "not a 64-bit integer: " + std::string(env));
  }
  return 0;
}

void print_json(const serialize::Json& j) { std::cout << j.dump(2) << "\n"; }

int run_session(const Config& cfg) {
  SchemeId id = parse_scheme_id(cfg.scheme);
  std::uint64_t seed = resolve_seed(cfg);
  protocol::Simulation sim(schemes::make_suite(id, seed), seed, cfg.delta_t);
  Rng rng(derive_seed(seed, "cli-user"));
  protocol::Identity user(static_cast<std::uint32_t>(rng.between(1, (1u << protocol::kIdentityBits) - 1)));
  protocol::Password pw("pw-" + to_hex(rng.bits(48)));
  protocol::SmartCard card = sim.register_user(user, pw);
  protocol::AuthResult result = sim.authenticate(card, user, pw, protocol::AdversaryScript::passive());

  const auto& t = result.transcript;
  if (cfg.format == "json") {
    serialize::Json j = serialize::to_json(t);
    j["seed"] = seed;
    j["session_seed"] = t.seed;
    print_json(j);
  } else if (cfg.format == "markdown") {
    std::cout << serialize::to_markdown(t);
  } else {
    std::cout << serialize::to_text(t);
  }
  if (!protocol::is_success(result.outcome)) return kMismatch;
  const auto& ok = std::get<protocol::MutualAuthSuccess>(result.outcome);
  if (sim.suite().metadata().defines_session_key && !ok.keys_match()) return kMismatch;
  return kExpected;
}

int run_attack(const Config& cfg) {
  SchemeId id = parse_scheme_id(cfg.scheme);
  attacks::ScenarioOptions options;
  options.trials = cfg.trials;
  options.seed = resolve_seed(cfg);
  options.delta_t = cfg.delta_t;
  options.tamper = attacks::parse_tamper(cfg.tamper);
  options.refresh_timestamp = cfg.refresh_timestamp;
  options.leak = attacks::parse_leak(cfg.leak);
  attacks::AttackReport report = attacks::run_scenario(id, attacks::parse_scenario(cfg.scenario), options);

  if (cfg.format == "json") {
    print_json(serialize::to_json(report, true));
  } else if (cfg.format == "markdown") {
    std::cout << serialize::to_markdown(report);
  } else {
    std::cout << serialize::to_text(report);
  }
  return attacks::agrees_with_publication(report) ? kExpected : kMismatch;
}

int run_matrix(const Config& cfg) {
  attacks::Matrix matrix = attacks::attribute_matrix(cfg.trials, resolve_seed(cfg), cfg.delta_t);
  if (cfg.format == "json") {
    print_json(serialize::to_json(matrix));
  } else {
    std::cout << serialize::to_markdown(matrix);
  }
  return matrix.matches_publication() ? kExpected : kMismatch;
}

int run_list(const Config& cfg) {
  if (cfg.format == "json") {
    serialize::Json j;
    j["schemes"] = serialize::Json::array();
    for (SchemeId s : kAllSchemes) j["schemes"].push_back(std::string(to_string(s)));
    j["scenarios"] = serialize::Json::array();
    for (auto s : attacks::kAllScenarios) j["scenarios"].push_back(std::string(attacks::to_string(s)));
    j["tampers"] = {"wei_scale_bprime", "lin_rehash_r", "identity"};
    j["leaks"] = {"session_nonces", "user_nonce_only"};
    print_json(j);
    return kExpected;
  }
  std::cout << "schemes:\n";
  for (SchemeId s : kAllSchemes) std::cout << "  " << to_string(s) << "\n";
  std::cout << "scenarios:\n";
  for (auto s : attacks::kAllScenarios) std::cout << "  " << attacks::to_string(s) << "\n";
  std::cout << "tampers:\n  wei_scale_bprime\n  lin_rehash_r\n  identity\n";
  std::cout << "leaks:\n  session_nonces\n  user_nonce_only\n";
  return kExpected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart-card TMIS authentication lab: honest sessions, attacks, attribute matrix"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "64-bit seed (falls back to TMIS_LAB_SEED, then 0)");
    cmd->add_option("--delta-t", cfg.delta_t, "accepted transmission delay in clock ticks")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text", "markdown"}));
  };
  const CLI::IsMember scheme_names({"wei2012", "zhu2012", "leeliu2013", "lin2013", "caozhai2013", "xie2013",
                                    "xu2014"});

  auto* run = app.add_subcommand("run", "run one honest session and print its transcript");
  run->add_option("--scheme", cfg.scheme, "scheme identifier")->required()->check(scheme_names);
  add_common(run);

  auto* attack = app.add_subcommand("attack", "run an attack scenario and print its report");
  attack->add_option("--scheme", cfg.scheme, "scheme identifier")->required()->check(scheme_names);
  std::vector<std::string> scenario_names;
  for (auto s : attacks::kAllScenarios) scenario_names.emplace_back(attacks::to_string(s));
  attack->add_option("--scenario", cfg.scenario, "scenario name")->required()->check(CLI::IsMember(scenario_names));
  attack->add_option("--trials", cfg.trials, "number of trials")->check(CLI::PositiveNumber);
  attack->add_option("--tamper", cfg.tamper, "transform for tamper_login_message")
      ->check(CLI::IsMember({"wei_scale_bprime", "lin_rehash_r", "identity"}));
  attack->add_flag("--refresh-timestamp", cfg.refresh_timestamp, "restamp replayed logins with the current time");
  attack->add_option("--leak", cfg.leak, "values handed over in temp_info_leak")
      ->check(CLI::IsMember({"session_nonces", "user_nonce_only"}));
  add_common(attack);

  auto* matrix = app.add_subcommand("matrix", "derive the security-attribute matrix");
  matrix->add_option("--trials", cfg.trials, "trials per evidence scenario")->check(CLI::PositiveNumber);
  add_common(matrix);

  auto* list = app.add_subcommand("list", "list schemes, scenarios and options");
  list->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExpected;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*run) return run_session(cfg);
    if (*attack) return run_attack(cfg);
    if (*matrix) return run_matrix(cfg);
    return run_list(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "tmis_lab: " << e.what() << "\n";
    return kUsage;
  }
}
