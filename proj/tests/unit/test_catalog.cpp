#include <doctest.h>

#include <set>

#include "orbitcheck/catalog.hpp"
#include "orbitcheck/errors.hpp"

using namespace orbitcheck;

TEST_CASE("catalog parses and ids are unique") {
  const auto& all = catalog();
  CHECK(all.size() >= 60);
  std::set<std::string> ids;
  for (const auto& e : all) {
    CHECK(ids.insert(e.id).second);
    if (e.constructible) {
      CHECK_FALSE(e.chain.empty());
    } else {
      CHECK_FALSE(e.missing.empty());
    }
  }
}

TEST_CASE("catalog filters") {
  std::set<std::string> families;
  for (const auto& e : catalog_list(parse_filter("source=THM 1.4"))) families.insert(e.family);
  CHECK(families.size() == 9);

  auto t1 = catalog_list(parse_filter("constructible=true,source=table1"));
  bool has_v10 = false;
  for (const auto& e : t1) has_v10 = has_v10 || e.id == "table1-V.10";
  CHECK(has_v10);

  auto t2 = catalog_list(parse_filter("source=table2,constructible=false"));
  bool has_iv41 = false;
  for (const auto& e : t2) has_iv41 = has_iv41 || e.id == "table2-IV.41";
  CHECK(has_iv41);

  CHECK_THROWS_AS(parse_filter("colour=red"), InputError);
  CHECK_THROWS_AS(parse_filter("source"), InputError);
}

TEST_CASE("instantiation") {
  auto s = catalog_instantiate(catalog_entry("thm1.4-case3-k2"));
  CHECK(module_dims(s) == std::vector<int>{2, 4});
  auto g2 = catalog_instantiate(catalog_entry("thm1.4-case1"));
  CHECK(module_dims(g2) == std::vector<int>{7, 7});
  CHECK(g2.isotypic_pair());
  auto sp2 = catalog_instantiate(catalog_entry("thm1.4-case8-n1"));
  CHECK(module_dims(sp2) == std::vector<int>{2, 4});
  // Overrides skip the expectation check.
  auto k4 = catalog_instantiate(catalog_entry("thm1.4-case3-k2"), {{"k", "4"}});
  CHECK(module_dims(k4) == std::vector<int>{8, 12});
  CHECK_THROWS_AS(catalog_instantiate(catalog_entry("thm1.4-case9")), Unconstructible);
  try {
    catalog_instantiate(catalog_entry("table2-IV.41"));
  } catch (const Unconstructible& ex) {
    CHECK(std::string(ex.what()).find("e8") != std::string::npos);
  }
  CHECK_THROWS_AS(catalog_entry("no-such-id"), InputError);
}

TEST_CASE("malformed catalog documents") {
  CHECK_THROWS_AS(parse_catalog("{"), InputError);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "other/1", "entries": []})"), InputError);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "orbitcheck.catalog/1", "entries": [{"id": "x"}]})"), InputError);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "orbitcheck.catalog/1", "entries": [
      {"id": "x", "source": "s", "label": "l", "constructible": true}]})"),
                  InputError);
  auto ok = parse_catalog(R"({"schema": "orbitcheck.catalog/1", "entries": [
      {"id": "x", "source": "s", "label": "l", "constructible": false, "missing": "e7",
       "expected": {"go": "no", "module_dims": [4, 1]}}]})");
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].expected.go == false);
  CHECK(ok[0].expected.module_dims == std::vector<int>{1, 4});
}

TEST_CASE("catalog run on small entries matches expectations") {
  CatalogPlan plan;
  plan.samples = 20;
  for (const char* id : {"thm1.4-case3-k2", "thm1.4-case1", "table1-V.10", "prop1.2-case1", "table3-r09-n1"}) {
    auto r = run_entry(catalog_entry(id), plan);
    CAPTURE(id);
    CHECK(r.ran);
    CHECK(r.error.empty());
    CHECK(r.mismatches.empty());
  }
  auto v10 = run_entry(catalog_entry("table1-V.10"), plan);
  CHECK(v10.observed_go == "no");
  REQUIRE(v10.filter);
  CHECK_FALSE(v10.filter->passed());
  auto g2 = run_entry(catalog_entry("thm1.4-case1"), plan);
  CHECK(g2.runs.size() == 4);  // three two-parameter metrics and one block metric
  auto skipped = run_entry(catalog_entry("table1-V.16"), plan);
  CHECK_FALSE(skipped.ran);
  CHECK(skipped.ok());
}
