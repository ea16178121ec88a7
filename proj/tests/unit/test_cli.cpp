#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbitcheck/cli.hpp"
#include "orbitcheck/json_io.hpp"

using namespace orbitcheck;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("orbitcheck_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

const char* kSo3 = R"({"schema": "orbitcheck.algebra/1", "dim": 3, "structure": [
  [0,1,2,1], [1,0,2,-1], [1,2,0,1], [2,1,0,-1], [2,0,1,1], [0,2,1,-1]],
  "inner_product": [[1,0,0],[0,1,0],[0,0,1]]})";

}  // namespace

TEST_CASE("cli: Ledger-Obata weights for (3,1,2)") {
  auto r = cli({"natred", "ledger-obata", "--A", "3", "--B", "1", "--C", "2", "--json"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["schema"] == "orbitcheck.natred/1");
  CHECK(j["weights"]["alpha"].get<double>() == doctest::Approx(5.0 / 3));
  CHECK(j["weights"]["gamma"].get<double>() == doctest::Approx(-5.0));
  CHECK(j["system_residual"].get<double>() <= 1e-12);

  auto e = cli({"natred", "ledger-obata", "--A", "3", "--B", "1", "--C", "2", "--exact", "--json"});
  REQUIRE(e.code == 0);
  auto je = Json::parse(e.out);
  CHECK(je["weights"]["beta"] == "5/4");
  CHECK(je["system_holds"] == true);
}

TEST_CASE("cli: case 4 exact and L-normal branch") {
  auto r = cli({"natred", "case4", "--a", "1", "--b", "3", "--json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["branch"] == "l_normal");
  auto e = cli({"natred", "case4", "--a", "1", "--b", "2", "--exact", "--json"});
  CHECK(Json::parse(e.out)["weights"]["beta"] == "3");
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"check-go", "missing.json"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"check-go", "--chain", "so(2k)_in_so(2k+1)", "--bogus"}).code == 2);
  CHECK(cli({"check-go", "--chain", "no_such_chain"}).code == 2);
  CHECK(cli({"catalog", "show", "nope"}).code == 2);
  CHECK(cli({"catalog", "list", "--filter", "colour=red"}).code == 2);
  CHECK(cli({"decompose", "--catalog", "table1-V.16"}).code == 2);  // not constructible
  CHECK(cli({"--help"}).code == 0);

  auto neg = cli({"check-go", "--catalog", "table1-V.10", "--samples", "10", "--expect", "not_go"});
  CHECK(neg.code == 0);
  auto wrong = cli({"check-go", "--catalog", "table1-V.10", "--samples", "10", "--expect", "go"});
  CHECK(wrong.code == 1);
  CHECK(cli({"filter", "--catalog", "table1-V.10", "--expect", "fail"}).code == 0);
  CHECK(cli({"classify", "--catalog", "prop1.2-case1", "--expect", "2"}).code == 1);
}

TEST_CASE("cli: ORBITCHECK_TOL") {
  setenv("ORBITCHECK_TOL", "abc", 1);
  CHECK(cli({"natred", "case4", "--a", "1", "--b", "2"}).code == 2);
  setenv("ORBITCHECK_TOL", "1e-8", 1);
  CHECK(cli({"natred", "case4", "--a", "1", "--b", "2"}).code == 0);
  unsetenv("ORBITCHECK_TOL");
}

TEST_CASE("cli: validate documents") {
  auto ok = cli({"validate", temp_file("so3.json", kSo3), "--json"});
  CHECK(ok.code == 0);
  auto j = Json::parse(ok.out);
  CHECK(j["kind"] == "algebra");
  CHECK(j["ad_invariant_exact"] == true);

  // [e0, e1] = e2 alone breaks antisymmetry.
  auto bad = cli({"validate", temp_file("bad.json", R"({"dim": 3, "structure": [[0,1,2,1]]})")});
  CHECK(bad.code == 1);

  auto broken = cli({"validate", temp_file("broken.json", "{\"dim\": 3,")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("broken.json") != std::string::npos);

  auto range = cli({"validate", temp_file("range.json", R"({"dim": 2, "structure": [[0,1,2,1]]})")});
  CHECK(range.code == 2);
  CHECK(range.err.find("structure[0]") != std::string::npos);
}

TEST_CASE("cli: space documents and centralizers") {
  std::string space = temp_file("space.json", std::string(R"({"schema": "orbitcheck.space/1", "g": )") + kSo3 +
                                                  R"j(, "h_embedding": {"domain": "so(2)", "matrix": [[1],[0],[0]]}})j");
  auto d = cli({"decompose", space, "--json"});
  REQUIRE(d.code == 0);
  auto j = Json::parse(d.out);
  CHECK(j["dim_m"] == 2);
  CHECK(j["modules"].size() == 1);

  auto v = cli({"validate", space, "--json"});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out)["kind"] == "space");

  // e1 in m: its centralizer in h = span(e0) is zero; e0 itself is fixed by h.
  auto c1 = cli({"centralizer", space, "--vector", temp_file("u1.json", "[0, 1, 0]"), "--json"});
  REQUIRE(c1.code == 0);
  CHECK(Json::parse(c1.out)["centralizer_dim"] == 0);
  auto c0 = cli({"centralizer", space, "--vector", temp_file("u0.json", R"({"coords": ["1", 0, 0]})"), "--json"});
  REQUIRE(c0.code == 0);
  CHECK(Json::parse(c0.out)["centralizer_dim"] == 1);
  CHECK(Json::parse(c0.out)["centralizer_exact"] == true);
  CHECK(cli({"centralizer", space, "--vector", temp_file("u2.json", "[0, 1]")}).code == 2);
  CHECK(cli({"centralizer", space}).code == 2);
}

TEST_CASE("cli: catalog run is deterministic") {
  auto a = cli({"catalog", "run", "--filter", "source=thm1.4", "--json"});
  REQUIRE(a.code == 0);
  auto j = Json::parse(a.out);
  CHECK(j["ok"] == true);
  CHECK(j["mismatches"] == 0);
  CHECK(j["ran"] == 11);
  auto b = cli({"catalog", "run", "--filter", "source=thm1.4", "--json"});
  CHECK(a.out == b.out);

  auto list = cli({"catalog", "list", "--filter", "source=table3", "--json"});
  REQUIRE(list.code == 0);
  CHECK(Json::parse(list.out)["count"] == 15);
}

TEST_CASE("cli: tables are rendered from the JSON model") {
  auto t = cli({"decompose", "--chain", "u(k)_in_so(2k)_in_so(2k+1)"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("metric_space_dim: 2") != std::string::npos);
  CHECK(t.out.find("schema") == std::string::npos);
  auto z = cli({"zoo", "check", "so(2k)_in_so(2k+1)", "--json"});
  CHECK(z.code == 0);
  CHECK(Json::parse(z.out)["passed"] == true);
}
