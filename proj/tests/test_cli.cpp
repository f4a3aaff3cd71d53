#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "test_helpers.hpp"

namespace {

std::string binary() {
  const char* b = std::getenv("PROBCSP_BIN");
  REQUIRE_MESSAGE(b != nullptr, "PROBCSP_BIN must point at the CLI binary");
  return b;
}

std::string fixture(const std::string& name) { return testutil::fixture_dir() + "/" + name; }

struct cmd_result {
  int code;
  std::string out;
};

cmd_result run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze reports the star probabilities") {
  const cmd_result r =
      run("analyze --network " + fixture("star_network.json") + " --events " +
          fixture("star_events.json"));
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["network"]["e"].get<double>() == doctest::Approx(11.0 / 12.0).epsilon(1e-9));
  bool saw_center = false;
  for (const auto& v : doc["values"]) {
    if (v["var"] == "center") {
      saw_center = true;
      CHECK(v["p_network"].get<double>() == doctest::Approx(11.0 / 36.0).epsilon(1e-9));
      CHECK(v["per_constraint"].size() == 2);
    }
  }
  CHECK(saw_center);
}

TEST_CASE("analyze with no events is all zero") {
  const cmd_result r = run("analyze --network " + fixture("star_network.json") + " --events " +
                           fixture("no_events.json"));
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["network"]["e"].get<double>() == 0.0);
  for (const auto& v : doc["values"]) CHECK(v["p_network"].get<double>() == 0.0);
}

TEST_CASE("malformed documents exit with code 2 and a location") {
  const std::string bad = "cli_bad_input.json";
  {
    std::ofstream out(bad);
    out << "{\"variables\": [";
  }
  const cmd_result r =
      run("analyze --network " + bad + " --events " + fixture("no_events.json"));
  CHECK(r.code == 2);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK(r.out.find("document") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("missing file exits with code 2") {
  const cmd_result r = run("analyze --network does_not_exist.json --events " +
                           fixture("no_events.json"));
  CHECK(r.code == 2);
  CHECK(r.out.find("cannot open") != std::string::npos);
}

TEST_CASE("bad flags exit with code 2") {
  CHECK(run("analyze --no-such-flag").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("propagate raises both hypotheses on the matched pair") {
  const std::string trace_path = "cli_trace.jsonl";
  const cmd_result r = run("propagate --network " + fixture("perm4_network.json") + " --events " +
                           fixture("perm4_events.json") + " --trace " + trace_path);
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["rem"]["x"] == 3);
  CHECK(doc["rem"]["y"] == 3);
  CHECK(doc["network"]["e_lower"].get<double>() == 6.0);

  std::ifstream trace(trace_path);
  REQUIRE(trace.good());
  std::string line;
  int updates = 0, enqueues = 0;
  bool first_is_y_update = false;
  bool first_line = true;
  while (std::getline(trace, line)) {
    const nlohmann::json ev = nlohmann::json::parse(line);
    if (first_line) {
      first_is_y_update = ev["ev"] == "update" && ev["var"] == "y";
      first_line = false;
    }
    if (ev["ev"] == "update") ++updates;
    if (ev["ev"] == "enqueue") ++enqueues;
  }
  CHECK(updates == 8);
  CHECK(enqueues == 1);
  CHECK(first_is_y_update);
  std::remove(trace_path.c_str());
}

TEST_CASE("propagate with no events emits zeros") {
  const cmd_result r = run("propagate --network " + fixture("perm4_network.json") + " --events " +
                           fixture("no_events.json"));
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["network"]["e"].get<double>() == 0.0);
  CHECK(doc["rem"]["x"] == 0);
}

TEST_CASE("oracle emits exact fractions") {
  const cmd_result r = run("oracle --network " + fixture("star_network.json") + " --events " +
                           fixture("star_events.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"11/12\"") != std::string::npos);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["network"]["exact"] == "11/12");
}

TEST_CASE("oracle budget refusal exits with code 2") {
  const cmd_result r = run("oracle --network " + fixture("star_network.json") + " --events " +
                           fixture("star_events.json") + " --budget 3");
  CHECK(r.code == 2);
  CHECK(r.out.find("budget") != std::string::npos);
}

TEST_CASE("oracle monte carlo block is seeded") {
  const cmd_result a = run("oracle --network " + fixture("star_network.json") + " --events " +
                           fixture("star_events.json") + " --mc-samples 5000 --seed 7");
  REQUIRE(a.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(a.out);
  CHECK(doc["mc"]["samples"] == 5000);
  const cmd_result b = run("oracle --network " + fixture("star_network.json") + " --events " +
                           fixture("star_events.json") + " --mc-samples 5000 --seed 7");
  CHECK(a.out == b.out);
}

TEST_CASE("gen output parses and is seeded") {
  const cmd_result a = run("gen --vars 6 --dom 4 --density 0.5 --tightness 0.25 --seed 42");
  REQUIRE(a.code == 0);
  const probcsp::constraint_network net = probcsp::parse_network(a.out);
  CHECK(net.var_count() == 6);
  const cmd_result b = run("gen --vars 6 --dom 4 --density 0.5 --tightness 0.25 --seed 42");
  CHECK(a.out == b.out);
}

TEST_CASE("calibrate prints the csv table") {
  const cmd_result r = run(
      "calibrate --vars 4 --dom 4 --density 0.6 --tightness 0.4 --k 2 --trials 4 --seed 13");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("trial,seed,e_pred,e_lower,actual_first_round,actual_fixpoint\n", 0) == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 5);
}

TEST_CASE("ac3 exit codes distinguish wipeout") {
  const cmd_result ok = run("ac3 --network " + fixture("perm4_network.json"));
  CHECK(ok.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(ok.out);
  CHECK(doc["empty_domain"] == false);
  CHECK(doc["domains"]["x"].size() == 4);

  const cmd_result wiped = run("ac3 --network " + fixture("wipeout_network.json"));
  CHECK(wiped.code == 1);
  const nlohmann::json docw = nlohmann::json::parse(wiped.out);
  CHECK(docw["empty_domain"] == true);
  CHECK(docw["domains"]["a"].empty());
}

TEST_CASE("out flag writes the same bytes as stdout") {
  const std::string out_path = "cli_report.json";
  const cmd_result direct = run("analyze --network " + fixture("star_network.json") +
                                " --events " + fixture("star_events.json"));
  const cmd_result filed = run("analyze --network " + fixture("star_network.json") + " --events " +
                               fixture("star_events.json") + " --out " + out_path);
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(testutil::read_file(out_path) == direct.out);
  std::remove(out_path.c_str());
}

}  // TEST_SUITE
