#pragma once

// Named spaces with expected verdicts. The registry ships as data/catalog.json
// (schema "orbitcheck.catalog/1") and is compiled into the library.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/go_engine.hpp"

namespace orbitcheck {

struct ExpectedVerdict {
  std::optional<bool> go;
  std::optional<int> metric_space_dim;
  std::vector<int> module_dims;  // as a multiset
  std::optional<bool> isotypic;  // some two modules are isomorphic
  std::optional<bool> weakly_symmetric;
  std::optional<bool> naturally_reductive;
  std::optional<int> structure_case;
};

struct CatalogEntry {
  std::string id;
  std::string family;
  std::string source;  // thm1.4, table1, table2, table3, prop1.2
  std::string label;
  std::string chain;   // registry name; empty when not constructible
  Params params;
  bool constructible = false;
  std::string missing;
  ExpectedVerdict expected;
  std::map<std::string, std::string> metadata;
};

/// Parses a catalog document; InputError names the offending entry and field.
std::vector<CatalogEntry> parse_catalog(const std::string& json_text);

/// The built-in catalog, in file order.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry& catalog_entry(const std::string& id);

/// Conjunction of key=value terms over id, family, source, constructible, go.
/// Source values are compared case- and space-insensitively, with long prefixes shortened.
struct CatalogFilter {
  std::vector<std::pair<std::string, std::string>> terms;
  bool matches(const CatalogEntry& e) const;
};

/// Parses "key=value[,key=value...]"; repeated --filter flags can be joined with commas.
CatalogFilter parse_filter(const std::string& text);

std::vector<CatalogEntry> catalog_list(const CatalogFilter& filter = {});

/// Builds and decomposes the space. Throws Unconstructible for metadata-only entries.
/// Without overrides the module dimensions are checked against the expectation.
ReductiveSpace catalog_instantiate(const CatalogEntry& e, const Params& overrides = {}, std::uint64_t seed = 0);

struct MetricRun {
  std::string metric;  // "two_param(1,2)" or "block(...)"
  GoVerdict verdict;
};

struct EntryReport {
  std::string id;
  bool constructible = false;
  bool ran = false;
  std::string error;
  std::vector<int> module_dims;
  bool isotypic = false;
  int metric_space_dim = 0;
  std::optional<FilterReport> filter;
  std::vector<MetricRun> runs;
  std::string observed_go;  // yes, no, inconclusive
  std::vector<std::string> mismatches;
  double seconds = 0.0;

  bool ok() const { return error.empty() && mismatches.empty(); }
};

struct CatalogPlan {
  int samples = 30;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::vector<std::pair<double, double>> pairs{{1, 2}, {2, 1}, {1, 5}};
};

struct CatalogReport {
  std::vector<EntryReport> entries;
  int mismatches() const;
  bool ok() const { return mismatches() == 0; }
};

EntryReport run_entry(const CatalogEntry& e, const CatalogPlan& plan);

/// Runs every constructible entry matching the filter; skipped entries are listed with ran = false.
CatalogReport catalog_run(const CatalogFilter& filter, const CatalogPlan& plan);

/// Module dimensions sorted ascending.
std::vector<int> module_dims(const ReductiveSpace& s);
bool has_isomorphic_modules(const ReductiveSpace& s);

}  // namespace orbitcheck
