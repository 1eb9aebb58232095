#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "kawactrl/errors.hpp"
#include "kawactrl/harness/commands.hpp"
#include "kawactrl/harness/config.hpp"
#include "kawactrl/harness/record.hpp"

using namespace kawactrl;
using namespace kawactrl::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json simulate_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "kind": "simulate",
    "seed": 3,
    "solver": {"n_modes": 32},
    "simulate": {"u0": {"trig": [[1, 0.5, 0.0]]}, "T": 0.1}
  })");
}

fs::path scratch(const std::string& name) {
  std::random_device rd;
  auto p = fs::temp_directory_path() / ("kawactrl_test_" + name + "_" + std::to_string(rd()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (auto k : {Kind::simulate, Kind::saturate, Kind::decompose, Kind::synthesize,
                 Kind::asymptotic, Kind::necessity, Kind::stability}) {
    CHECK(kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(kind_from_string("simulated"), InvalidInput);
}

TEST_CASE("shipped configs parse") {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(KAWACTRL_SOURCE_DIR "/configs")) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_config(e.path()));
    ++n;
  }
  CHECK(n >= 7);
}

TEST_CASE("strict schema") {
  CHECK_NOTHROW(parse_config(simulate_doc()));

  auto d = simulate_doc();
  d["schema_version"] = 2;
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  d = simulate_doc();
  d["extra"] = 1;
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  d = simulate_doc();
  d["solver"]["n_mode"] = 32;
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  d = simulate_doc();
  d.erase("kind");
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  d = simulate_doc();
  d["solver"]["n_modes"] = "32";
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  d = simulate_doc();
  d["solver"]["dt_max"] = -1.0;
  CHECK_THROWS_AS(parse_config(d), InvalidInput);

  CHECK_THROWS_AS(parse_config(json::array()), InvalidInput);
  CHECK_THROWS_AS(load_config("/nonexistent/kawactrl.json"), InvalidInput);
}

TEST_CASE("int lists") {
  CHECK(parse_int_list(json::parse("[1, -2, 3]"), "x") == std::vector<int>{1, -2, 3});
  CHECK_THROWS_AS(parse_int_list(json::parse("[1.5]"), "x"), InvalidInput);
  CHECK_THROWS_AS(parse_int_list(json::parse("{}"), "x"), InvalidInput);
}

TEST_CASE("checks") {
  CHECK(Check{"a", 1.0, "<", 2.0}.pass());
  CHECK_FALSE(Check{"a", 2.0, "<", 2.0}.pass());
  CHECK(Check{"a", 2.0, "<=", 2.0}.pass());
  CHECK(Check{"a", 2.0, ">=", 2.0}.pass());
  CHECK_FALSE(Check{"a", std::nan(""), "<", 2.0}.pass());
  CHECK_FALSE(Check{"a", 1.0, "~", 2.0}.pass());
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::invalid_input) == kExitBadConfig);
  CHECK(exit_code_for(ErrorKind::no_convergence) == kExitInfeasible);
  CHECK(exit_code_for(ErrorKind::not_generator) == kExitInfeasible);
  CHECK(exit_code_for(ErrorKind::constant_not_representable) == kExitInfeasible);
}

TEST_CASE("runs write a record and are reproducible") {
  const auto cfg = parse_config(simulate_doc());
  const auto out = scratch("simulate");
  const auto a = run_experiment(cfg, out / "a");
  const auto b = run_experiment(cfg, out / "b");
  CHECK(a.exit_code == kExitPass);
  CHECK(a.pass());
  CHECK(a.config_hash == fnv1a_hex(cfg.canonical));
  CHECK(a.payload == b.payload);
  REQUIRE(fs::exists(out / "a" / "record.json"));
  std::ifstream in(out / "a" / "record.json");
  const auto rec = json::parse(in);
  CHECK(rec["kind"] == "simulate");
  CHECK(rec["exit_code"] == 0);
  CHECK(rec["seed"] == 3);
  fs::remove_all(out);
}

TEST_CASE("errors map onto exit codes in the record") {
  const auto out = scratch("errors");

  auto bad_body = simulate_doc();
  bad_body["simulate"]["unknown"] = true;
  CHECK(run_experiment(parse_config(bad_body), out / "a").exit_code == kExitBadConfig);

  auto constant = json::parse(R"({
    "schema_version": 1, "kind": "decompose",
    "decompose": {"target": {"modes": [[0, 1.0, 0.0]]}, "I0": [-1, 1], "level": 0}
  })");
  const auto rc = run_experiment(parse_config(constant), out / "b");
  CHECK(rc.exit_code == kExitInfeasible);
  CHECK(rc.error_kind == to_string(ErrorKind::constant_not_representable));

  auto tight = simulate_doc();
  tight["simulate"]["tolerances"] = {{"l2_drift", 1e-30}};
  CHECK(run_experiment(parse_config(tight), out / "c").exit_code == kExitToleranceFailure);
  fs::remove_all(out);
}
