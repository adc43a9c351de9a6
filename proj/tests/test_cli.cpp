#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "heatlab/cli.hpp"

using heatlab::cli::parse_config;
using heatlab::cli::RunConfig;
using heatlab::cli::run;
using nlohmann::json;

namespace {

RunConfig config_from(const std::vector<std::string>& sets) {
  return parse_config("", sets);
}

int run_binary(const std::string& args) {
#ifdef HEATLAB_CLI_PATH
  const std::string cmd = std::string(HEATLAB_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
#else
  (void)args;
  return -1;
#endif
}

}  // namespace

TEST_CASE("parse_config: minimal scenario configs") {
  const auto c = config_from({"scenario=superradiance", "L=3", "gamma0=1", "omega_q=1"});
  CHECK(c.scenario == "superradiance");
  CHECK(c.L.value() == 3);
  CHECK(c.gamma0.value() == 1.0);

  // Missing required key is named at run time.
  RunConfig missing = config_from({"scenario=mbody", "L=4", "gamma0=1", "omega_q=1"});
  missing.command = "scenario";
  try {
    run(missing);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("'m'") != std::string::npos);
  }
}

TEST_CASE("parse_config: validation failures") {
  CHECK_THROWS_AS(config_from({"scenario=superradiance", "xi_override=-1"}),
                  std::invalid_argument);
  try {
    config_from({"scenario=superradiance", "gamma_zero=1"});
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("gamma_zero") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from({"scenario=superradiance", "L=2.5"}), std::invalid_argument);
  CHECK_THROWS_AS(config_from({"format=yaml"}), std::invalid_argument);
}

TEST_CASE("parse_config: config file plus overrides, flags win") {
  const std::string path = "/tmp/heatlab_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"scenario": "superradiance", "L": 3, "gamma0": 1.0, "omega_q": 1.0})";
  }
  const auto c = parse_config(path, {"gamma0=2.5"});
  CHECK(c.gamma0.value() == 2.5);
  CHECK(c.L.value() == 3);
  std::remove(path.c_str());

  CHECK_THROWS_AS(parse_config("/tmp/definitely_missing_heatlab.json", {}),
                  std::invalid_argument);
}

TEST_CASE("parse_config: L_list forms") {
  CHECK(config_from({"scenario=mbody", "L_list=\"2..6\""}).L_list ==
        std::vector<long long>{2, 3, 4, 5, 6});
  CHECK(config_from({"scenario=mbody", "L_list=\"11..31:10\""}).L_list ==
        std::vector<long long>{11, 21, 31});
  CHECK(config_from({"scenario=mbody", "L_list=\"3,5,9\""}).L_list ==
        std::vector<long long>{3, 5, 9});
  CHECK(config_from({"scenario=mbody", "L_list=[4,6,8]"}).L_list ==
        std::vector<long long>{4, 6, 8});
}

TEST_CASE("run scenario superradiance L=3: currents and ratio") {
  RunConfig c = config_from({"scenario=superradiance", "L=3", "gamma0=1", "omega_q=1"});
  c.command = "scenario";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 0);
  const json report = json::parse(outcome.report_json);
  CHECK(report["currents"]["measured"].get<double>() == doctest::Approx(-4.0));
  CHECK(report["bounds"]["saturation_ratio_2"].get<double>() ==
        doctest::Approx(16.0 / 36.0).epsilon(1e-9));
  CHECK(report["inputs"]["L"].get<long long>() == 3);
  // The Xi convention note is always present.
  bool found_note = false;
  for (const auto& note : report["notes"]) {
    if (note.get<std::string>().find("half-delta") != std::string::npos) found_note = true;
  }
  CHECK(found_note);
}

TEST_CASE("run sweep mbody m=L: csv rows and cubic fit") {
  RunConfig c = config_from({"scenario=mbody", "gamma0=1", "omega_q=1", "L_list=\"2..10\""});
  c.command = "sweep";
  c.format = "csv";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 0);
  const json report = json::parse(outcome.report_json);
  CHECK(report["scaling"]["value_fit"]["exponent"].get<double>() ==
        doctest::Approx(3.0).epsilon(1e-6));
  // Header plus 9 rows.
  std::istringstream csv(outcome.csv);
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("run bounds on a dephasing config: current and tight bounds vanish") {
  RunConfig c = config_from({"scenario=dephasing", "L=3", "gamma0=1", "omega_q=1"});
  c.command = "bounds";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 0);
  const json report = json::parse(outcome.report_json);
  CHECK(std::abs(report["currents"]["measured"].get<double>()) <= 1e-14);
  CHECK(report["bounds"]["bound_commutator"].get<double>() <= 1e-12);
  CHECK(report["bounds"]["bound2"].get<double>() <= 1e-12);

  RunConfig silent = config_from({"scenario=dephasing", "L=3", "gamma0=0", "omega_q=1"});
  silent.command = "bounds";
  const json silent_report = json::parse(run(silent).report_json);
  CHECK(silent_report["bounds"]["bound1"].get<double>() == 0.0);
}

TEST_CASE("run evolve: ladder cascade csv") {
  RunConfig c = config_from(
      {"scenario=superradiance", "L=3", "gamma0=1", "omega_q=1", "t_final=5.0"});
  c.command = "evolve";
  c.format = "csv";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 0);
  std::istringstream csv(outcome.csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("t,energy,J") == 0);
  // Populations fully relax to the bottom rung by gamma0 t = 5... final row has
  // p close to the ground rung.
  std::string line, last;
  while (std::getline(csv, line)) {
    if (!line.empty()) last = line;
  }
  CHECK(!last.empty());
}

TEST_CASE("run evolve: gksl trajectory audit stays thermodynamic") {
  RunConfig c = config_from({"scenario=mbody", "L=2", "m=2", "gamma0=0.5", "omega_q=1",
                             "t_final=2.0", "engine=gksl"});
  c.command = "evolve";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 0);
  const json report = json::parse(outcome.report_json);
  CHECK(report["thermo"]["min_sigma_dot"].get<double>() >= -1e-9);
}

TEST_CASE("bound violations from an Xi override are advisory but flip the exit code") {
  RunConfig c = config_from(
      {"scenario=superradiance", "L=5", "gamma0=1", "omega_q=1", "xi_override=1e-9"});
  c.command = "scenario";
  const auto outcome = run(c);
  CHECK(outcome.exit_code == 1);
  CHECK(!outcome.problems.empty());
  // The report is still produced in full.
  const json report = json::parse(outcome.report_json);
  CHECK(report.contains("problems"));
  CHECK(report["currents"]["measured"].get<double>() == doctest::Approx(-9.0));
}

TEST_CASE("round trip: echoed inputs reproduce the report bit for bit") {
  RunConfig c = config_from({"scenario=superradiance", "L=7", "gamma0=0.37", "omega_q=1.13"});
  c.command = "scenario";
  const auto first = run(c);
  const json report = json::parse(first.report_json);

  std::vector<std::string> echoed;
  for (const auto& [key, value] : report["inputs"].items()) {
    echoed.push_back(key + "=" + value.dump());
  }
  RunConfig c2 = parse_config("", echoed);
  c2.command = "scenario";
  const auto second = run(c2);
  CHECK(first.report_json == second.report_json);
}

TEST_CASE("end-to-end binary run") {
  const std::string out = "/tmp/heatlab_e2e_report.json";
  const int code = run_binary(
      "scenario --set scenario=superradiance --set L=3 --set gamma0=1 --set omega_q=1 --out " +
      out + " > /dev/null 2>&1");
  REQUIRE(code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  json report;
  in >> report;
  CHECK(report["currents"]["measured"].get<double>() == doctest::Approx(-4.0));
  std::remove(out.c_str());

  // Unknown key: hard error with exit code 2.
  CHECK(run_binary("scenario --set scenario=superradiance --set bogus_key=1 > /dev/null 2>&1") ==
        2);
  // csv for a plain scenario is rejected.
  CHECK(run_binary(
            "scenario --set scenario=superradiance --set L=3 --set gamma0=1 --set omega_q=1 "
            "--format csv > /dev/null 2>&1") == 2);
}
