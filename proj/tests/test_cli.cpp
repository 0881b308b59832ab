#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "metazeta/cli.hpp"

using namespace metazeta;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "metazeta");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("validate") {
  auto ok = run({"validate", "2", "5", "3", "7"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("valid") != std::string::npos);
  auto bad = run({"validate", "3", "2", "1", "2", "--json"});
  CHECK(bad.code == kExitOk);
  CHECK(nlohmann::json::parse(bad.out)["valid"] == false);
  CHECK(run({"validate", "4", "2", "1", "3"}).code == kExitInvalidArgument);
}

TEST_CASE("zeta") {
  auto r = run({"zeta", "2", "2", "1", "3", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["counts"] == nlohmann::json::array({"1", "5", "3", "1"}));
  CHECK(run({"zeta", "3", "2", "1", "2"}).code == kExitInvalidArgument);
  CHECK(run({"zeta", "2", "2", "1"}).code == kExitInvalidArgument);
  CHECK(run({"zeta", "2", "5", "3", "-1", "--json"}).code == kExitOk);
  CHECK(run({"zeta", "2", "5", "3", "7", "--verify"}).code == kExitOk);
}

TEST_CASE("compare") {
  auto r = run({"compare", "2", "5", "3", "7", "15", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["isomorphic"] == false);
  CHECK(j["zeta_equal"] == true);
  CHECK(j["lattice_isomorphic"] == false);
  auto same = nlohmann::json::parse(run({"compare", "2", "5", "3", "3", "11", "--json"}).out);
  CHECK(same["isomorphic"] == true);
  CHECK(same["lattice_isomorphic"] == true);
}

TEST_CASE("classify") {
  auto r = run({"classify", "2", "5", "3", "--lattice", "--verify", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["valid_k"].size() == 16);
  CHECK(j["zeta_representatives"] ==
        nlohmann::json::parse("[[1,5,9,17],[3],[7,15,31]]"));
  CHECK(j["lattice_representatives"] ==
        nlohmann::json::parse("[[1,5,9,17],[3],[7],[15],[31]]"));

  auto csv = run({"classify", "2", "3", "1", "--lattice", "--csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out == "k,iso_rep,zeta_rep,lattice_rep\n1,1,1,1\n3,3,3,3\n5,5,1,1\n7,7,7,7\n");

  auto partial = run({"--max-order", "64", "classify", "2", "5", "3", "--lattice"});
  CHECK(partial.code == kExitResourceLimit);
  CHECK(run({"classify", "2", "0", "3"}).code == kExitInvalidArgument);
}

TEST_CASE("oracle") {
  auto r = run({"oracle", "2", "2", "1", "3", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["counts"] == nlohmann::json::array({"1", "5", "3", "1"}));
  auto dot = run({"oracle", "2", "1", "1", "1", "--export-lattice"});
  CHECK(dot.code == kExitOk);
  CHECK(dot.out.find("digraph") != std::string::npos);
  auto group = run({"oracle", "2", "1", "1", "1", "--export-group"});
  CHECK(group.code == kExitOk);
  CHECK(nlohmann::json::parse(group.out).contains("subgroups"));
  CHECK(run({"oracle", "2", "7", "6", "1"}).code == kExitResourceLimit);
  CHECK(run({"--max-subgroups", "10", "oracle", "2", "3", "3", "1"}).code == kExitResourceLimit);
}

TEST_CASE("environment limits apply and flags override them") {
  setenv("METAZETA_MAX_ORDER", "16", 1);
  CHECK(run({"oracle", "2", "3", "2", "1"}).code == kExitResourceLimit);
  CHECK(run({"--max-order", "64", "oracle", "2", "3", "2", "1"}).code == kExitOk);
  unsetenv("METAZETA_MAX_ORDER");
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--p", "3", "--max-order", "81", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["passed"] == true);
  CHECK(run({"sweep", "--p", "6"}).code == kExitInvalidArgument);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInvalidArgument);
  CHECK(run({"frobnicate"}).code == kExitInvalidArgument);
  CHECK(run({"zeta", "2", "x", "1", "3"}).code == kExitInvalidArgument);
}
