#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmis/attacks.hpp"
#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"
#include "tmis/schemes.hpp"
#include "tmis/serialize.hpp"

namespace py = pybind11;
using namespace tmis;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& v) { return BigInt(py::str(static_cast<py::handle>(v)).cast<std::string>()); }
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

std::string run_session(const std::string& scheme, std::uint64_t seed, protocol::Tick delta_t) {
  SchemeId id = parse_scheme_id(scheme);
  protocol::Simulation sim(schemes::make_suite(id, seed), seed, delta_t);
  Rng rng(derive_seed(seed, "py-user"));
  protocol::Identity user(static_cast<std::uint32_t>(rng.between(1, (1u << protocol::kIdentityBits) - 1)));
  protocol::Password pw("pw-" + to_hex(rng.bits(48)));
  protocol::SmartCard card = sim.register_user(user, pw);
  auto result = sim.authenticate(card, user, pw, protocol::AdversaryScript::passive());
  return serialize::to_json(result.transcript).dump();
}

std::string attack(const std::string& scheme, const std::string& scenario, std::uint64_t trials, std::uint64_t seed,
                   const std::string& tamper, bool refresh_timestamp, const std::string& leak,
                   protocol::Tick delta_t, bool include_transcripts) {
  attacks::ScenarioOptions o;
  o.trials = trials;
  o.seed = seed;
  o.tamper = attacks::parse_tamper(tamper);
  o.refresh_timestamp = refresh_timestamp;
  o.leak = attacks::parse_leak(leak);
  o.delta_t = delta_t;
  auto report = attacks::run_scenario(parse_scheme_id(scheme), attacks::parse_scenario(scenario), o);
  return serialize::to_json(report, include_transcripts).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smart-card authentication scheme lab";

  // Messages start with the error code name, e.g. "NotInvertible: ...".
  py::register_exception<Error>(m, "TmisError", PyExc_ValueError);

  m.def("list_schemes", [] {
    std::vector<std::string> out;
    for (SchemeId s : kAllSchemes) out.emplace_back(to_string(s));
    return out;
  });
  m.def("list_scenarios", [] {
    std::vector<std::string> out;
    for (auto s : attacks::kAllScenarios) out.emplace_back(attacks::to_string(s));
    return out;
  });

  m.def("run_session", &run_session, py::arg("scheme"), py::arg("seed") = 0, py::arg("delta_t") = 5,
        py::call_guard<py::gil_scoped_release>());
  m.def("attack", &attack, py::arg("scheme"), py::arg("scenario"), py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("tamper") = "identity", py::arg("refresh_timestamp") = false, py::arg("leak") = "session_nonces",
        py::arg("delta_t") = 5, py::arg("include_transcripts") = false, py::call_guard<py::gil_scoped_release>());
  m.def(
      "attribute_matrix",
      [](std::uint64_t trials, std::uint64_t seed, protocol::Tick delta_t, bool markdown) {
        auto matrix = attacks::attribute_matrix(trials, seed, delta_t);
        return markdown ? serialize::to_markdown(matrix) : serialize::to_json(matrix).dump();
      },
      py::arg("trials") = 100, py::arg("seed") = 0, py::arg("delta_t") = 5, py::arg("markdown") = false,
      py::call_guard<py::gil_scoped_release>());

  m.def("mod_exp", [](const py::int_& b, const py::int_& e, const py::int_& n) {
    return to_py(crypto::mod_exp(to_big(b), to_big(e), to_big(n)));
  });
  m.def("mod_inv", [](const py::int_& a, const py::int_& n) { return to_py(crypto::mod_inv(to_big(a), to_big(n))); });
  m.def("rabin_roots", [](const py::int_& c, const py::int_& p, const py::int_& q) {
    crypto::RabinKeys keys{to_big(p) * to_big(q), to_big(p), to_big(q)};
    std::vector<py::int_> out;
    for (const auto& r : crypto::rabin_roots(to_big(c), keys)) out.push_back(to_py(r));
    return out;
  });
  m.def("toy_ec_mul", [](const py::int_& k) -> py::object {
    auto pt = crypto::ec_mul(to_big(k), crypto::toy_base_point(), crypto::toy_curve());
    if (pt.infinity) return py::none();
    return py::make_tuple(to_py(pt.x), to_py(pt.y));
  });
}
