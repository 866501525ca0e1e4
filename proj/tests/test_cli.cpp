#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "frobrig/cli.hpp"
#include "schema_check.hpp"

using namespace frobrig;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(FROBRIG_SOURCE_DIR) + "/schema/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

void check_against_schema(const std::string& output, const std::string& schema_name) {
  json value = json::parse(output);
  auto error = testutil::validate(value, load_schema(schema_name));
  if (error) {
    CAPTURE(*error, output);
    FAIL("schema violation");
  }
}

}  // namespace

TEST_CASE("check subcommand and exit codes") {
  auto r = run_cli({"check", "--f", "t", "--g", "t^2", "--field", "GF(2)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("equivalent") != std::string::npos);

  r = run_cli({"check", "--f", "t", "--g", "t+1", "--field", "GF(2)"});
  CHECK(r.code == 1);

  r = run_cli({"check", "--f", "t", "--g", "t^2", "--field", "GF(2)", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "check.schema.json");
  json j = json::parse(r.out);
  CHECK(j["frobenius"]["verdict"] == "equivalent");
  CHECK(j["frobenius"]["a"] == 1);
  CHECK(j["frobenius"]["b"] == 0);
  CHECK(j["consistent"] == true);

  r = run_cli({"check", "--f", "t", "--g", "t+1", "--field", "GF(2)", "--decide", "--json"});
  CHECK(r.code == 1);
  check_against_schema(r.out, "check.schema.json");
  j = json::parse(r.out);
  CHECK(j["decision"]["verdict"] == "not-equivalent");
  CHECK(j["topological"]["witness"]["tower_degree"] == 1);
  CHECK(j["h1"]["witness"]["n"] == 1);
}

TEST_CASE("decide subcommand") {
  auto r = run_cli({"decide", "--f", "t^2+t", "--g", "t^2+t+1", "--field", "GF(2)", "--json"});
  CHECK(r.code == 1);
  check_against_schema(r.out, "decide.schema.json");

  r = run_cli({"decide", "--f", "t^4+t^2", "--g", "t^2+t", "--field", "GF(2)"});
  CHECK(r.code == 0);
}

TEST_CASE("as-class subcommand") {
  auto r = run_cli({"as-class", "t^2", "--field", "GF(2)", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "as-class.schema.json");
  json j = json::parse(r.out);
  CHECK(j["trivial"] == false);
  CHECK(j["reduced"] == json::array({{1, "1"}}));

  r = run_cli({"as-class", "t^2+t over GF(2)", "--json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["trivial"] == true);

  r = run_cli({"as-class", "t^2"});
  CHECK(r.code == cli::kExitUsage);  // no field given
}

TEST_CASE("local probe subcommand") {
  auto r = run_cli({"local", "probe", "--f", "t^-1", "--g", "t^-1+1", "--field", "GF(2^2)",
                    "--nmax", "7", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "local.schema.json");
  json j = json::parse(r.out);
  CHECK(j["eps_case"] == "generic-unit");
  bool saw7 = false;
  for (const auto& row : j["rows"]) {
    if (row["n"] == 7) {
      saw7 = true;
      CHECK(row["solvable"] == "unsolvable");
      CHECK(row["certified_unsolvable"] == true);
    }
  }
  CHECK(saw7);
}

TEST_CASE("count subcommand") {
  auto r = run_cli({"count", "--f", "t^2+t", "--g", "t^2+t+1", "--field", "GF(2)", "--dmax", "2",
                    "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "count.schema.json");
  json j = json::parse(r.out);
  CHECK(j["rows"][0]["containment"] == false);
  CHECK(j["rows"][0]["witness"]["y"] == "0");
}

TEST_CASE("perf subcommand") {
  auto r = run_cli({"perf", "--expr", "t^4+t^2", "--field", "GF(2)", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "perf.schema.json");
  CHECK(json::parse(r.out)["first_failure"] == 2);

  r = run_cli({"perf", "--expr", "w+1", "--field", "GF(2^2)", "--json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["kind"] == "constant");
}

TEST_CASE("family subcommand") {
  auto r = run_cli({"family", "--field", "GF(2^2)", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "family.schema.json");
  json j = json::parse(r.out);
  REQUIRE(j["classes"].size() == 3);
  CHECK(j["classes"][0]["trivial"] == true);   // t = 1
  CHECK(j["classes"][1]["trivial"] == false);  // t = w
  CHECK(j["classes"][2]["trivial"] == false);  // t = w+1
}

TEST_CASE("reduce subcommand") {
  auto r = run_cli({"reduce", "--f", "t^8", "--field", "GF(2)", "--json"});
  CHECK(r.code == 0);
  check_against_schema(r.out, "reduce.schema.json");
  json j = json::parse(r.out);
  CHECK(j["core"] == "t");
  CHECK(j["exponent"] == 3);
}

TEST_CASE("error handling") {
  auto r = run_cli({"check", "--f", "t", "--g", "t(", "--field", "GF(2)"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(!r.err.empty());

  r = run_cli({"check", "--f", "t", "--g", "t", "--field", "GF(4)"});
  CHECK(r.code == cli::kExitUsage);  // composite base

  r = run_cli({"nonsense"});
  CHECK(r.code == cli::kExitUsage);

  r = run_cli({});
  CHECK(r.code == cli::kExitUsage);

  r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("frobrig") != std::string::npos);

  // budget failures are runtime errors, not usage errors
  r = run_cli({"decide", "--budget", "2", "--f", "t^2+t", "--g", "t^3+t", "--field", "GF(2)"});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("deterministic output") {
  auto a = run_cli({"check", "--f", "t^3+t", "--g", "t^6+t^2", "--field", "GF(2)", "--json"});
  auto b = run_cli({"check", "--f", "t^3+t", "--g", "t^6+t^2", "--field", "GF(2)", "--json"});
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);

  auto c = run_cli({"count", "--f", "t^2+t", "--g", "t^3+t", "--field", "GF(2)", "--dmax", "2",
                    "--json"});
  auto d = run_cli({"count", "--f", "t^2+t", "--g", "t^3+t", "--field", "GF(2)", "--dmax", "2",
                    "--json"});
  CHECK(c.out == d.out);
}
