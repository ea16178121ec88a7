#include "orbitcheck/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/registry.hpp"

namespace orbitcheck {

namespace detail {
extern const char* const kCatalogJson;
}

namespace {

using nlohmann::json;

std::optional<bool> opt_bool(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (j[key].is_boolean()) return j[key].get<bool>();
  if (j[key].is_string()) {
    auto s = j[key].get<std::string>();
    if (s == "yes") return true;
    if (s == "no") return false;
  }
  throw InputError(where + ": field '" + key + "' must be a boolean, \"yes\" or \"no\"");
}

std::optional<int> opt_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number_integer()) throw InputError(where + ": field '" + key + "' must be an integer");
  return j[key].get<int>();
}

std::string req_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) throw InputError(where + ": missing string field '" + key + "'");
  return j[key].get<std::string>();
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string normalize_source(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.rfind("theorem", 0) == 0) s = "thm" + s.substr(7);
  if (s.rfind("proposition", 0) == 0) s = "prop" + s.substr(11);
  return s;
}

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

std::string join_dims(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

ReductiveSpace build(const CatalogEntry& e, const Params& overrides, std::uint64_t seed) {
  if (!e.constructible) throw Unconstructible(e.id + " is not constructible: needs " + e.missing);
  Params p = e.params;
  for (const auto& [k, v] : overrides) p[k] = v;
  ReductiveSpace s = space_from_chain(named_embedding(e.chain, p), seed);
  s.name = e.id;
  return s;
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw InputError(std::string("catalog: ") + ex.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "orbitcheck.catalog/1")
    throw InputError("catalog: expected schema \"orbitcheck.catalog/1\"");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw InputError("catalog: missing 'entries' array");
  std::vector<CatalogEntry> out;
  int index = 0;
  for (const auto& j : doc["entries"]) {
    std::string where = "catalog entry " + std::to_string(index++);
    CatalogEntry e;
    e.id = req_string(j, "id", where);
    where += " (" + e.id + ")";
    e.family = j.contains("family") ? req_string(j, "family", where) : e.id;
    e.source = req_string(j, "source", where);
    e.label = req_string(j, "label", where);
    e.constructible = j.value("constructible", false);
    if (e.constructible) {
      e.chain = req_string(j, "chain", where);
    } else {
      e.missing = req_string(j, "missing", where);
    }
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw InputError(where + ": 'params' must be an object");
      for (const auto& [k, v] : j["params"].items()) e.params[k] = scalar_text(v);
    }
    if (j.contains("expected")) {
      const json& x = j["expected"];
      e.expected.go = opt_bool(x, "go", where);
      e.expected.metric_space_dim = opt_int(x, "metric_space_dim", where);
      if (x.contains("module_dims")) {
        for (const auto& d : x["module_dims"]) {
          if (!d.is_number_integer()) throw InputError(where + ": module_dims must hold integers");
          e.expected.module_dims.push_back(d.get<int>());
        }
        std::sort(e.expected.module_dims.begin(), e.expected.module_dims.end());
      }
      e.expected.isotypic = opt_bool(x, "isotypic", where);
      e.expected.weakly_symmetric = opt_bool(x, "weakly_symmetric", where);
      e.expected.naturally_reductive = opt_bool(x, "naturally_reductive", where);
      e.expected.structure_case = opt_int(x, "structure_case", where);
    }
    if (j.contains("metadata"))
      for (const auto& [k, v] : j["metadata"].items()) e.metadata[k] = scalar_text(v);
    for (const auto& prev : out)
      if (prev.id == e.id) throw InputError(where + ": duplicate id");
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = parse_catalog(detail::kCatalogJson);
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw InputError("unknown catalog id '" + id + "'");
}

bool CatalogFilter::matches(const CatalogEntry& e) const {
  for (const auto& [key, value] : terms) {
    if (key == "id") {
      if (e.id != value) return false;
    } else if (key == "family") {
      if (e.family != value) return false;
    } else if (key == "source") {
      if (normalize_source(e.source) != normalize_source(value)) return false;
    } else if (key == "constructible") {
      if (e.constructible != (value == "true" || value == "yes" || value == "1")) return false;
    } else if (key == "go") {
      bool want = value == "true" || value == "yes";
      if (!e.expected.go || *e.expected.go != want) return false;
    } else {
      throw InputError("unknown filter key '" + key + "' (use id, family, source, constructible, go)");
    }
  }
  return true;
}

CatalogFilter parse_filter(const std::string& text) {
  CatalogFilter f;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, ',')) {
    if (term.empty()) continue;
    auto eq = term.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("filter term '" + term + "' is not key=value");
    f.terms.emplace_back(term.substr(0, eq), term.substr(eq + 1));
  }
  CatalogEntry probe;
  f.matches(probe);  // rejects unknown keys early
  return f;
}

std::vector<CatalogEntry> catalog_list(const CatalogFilter& filter) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog())
    if (filter.matches(e)) out.push_back(e);
  return out;
}

std::vector<int> module_dims(const ReductiveSpace& s) {
  std::vector<int> d;
  for (const auto& m : s.modules) d.push_back(m.dim());
  std::sort(d.begin(), d.end());
  return d;
}

bool has_isomorphic_modules(const ReductiveSpace& s) {
  auto iso = s.isotypic;
  std::sort(iso.begin(), iso.end());
  return std::adjacent_find(iso.begin(), iso.end()) != iso.end();
}

ReductiveSpace catalog_instantiate(const CatalogEntry& e, const Params& overrides, std::uint64_t seed) {
  ReductiveSpace s = build(e, overrides, seed);
  if (overrides.empty() && !e.expected.module_dims.empty() && module_dims(s) != e.expected.module_dims)
    throw InvariantViolation(e.id + ": modules " + join_dims(module_dims(s)) + " but the catalog expects " +
                             join_dims(e.expected.module_dims));
  return s;
}

int CatalogReport::mismatches() const {
  int n = 0;
  for (const auto& e : entries) n += e.ok() ? 0 : 1;
  return n;
}

EntryReport run_entry(const CatalogEntry& e, const CatalogPlan& plan) {
  EntryReport r;
  r.id = e.id;
  r.constructible = e.constructible;
  if (!e.constructible) return r;
  auto start = std::chrono::steady_clock::now();
  r.ran = true;
  try {
    ReductiveSpace s = build(e, {}, plan.seed);
    r.module_dims = module_dims(s);
    r.isotypic = has_isomorphic_modules(s);
    r.metric_space_dim = s.metric_space_dim;
    const auto& x = e.expected;
    if (!x.module_dims.empty() && r.module_dims != x.module_dims)
      r.mismatches.push_back("module_dims " + join_dims(r.module_dims) + " != expected " + join_dims(x.module_dims));
    if (x.metric_space_dim && r.metric_space_dim != *x.metric_space_dim)
      r.mismatches.push_back("metric_space_dim " + std::to_string(r.metric_space_dim) + " != expected " +
                             std::to_string(*x.metric_space_dim));
    if (x.isotypic && r.isotypic != *x.isotypic)
      r.mismatches.push_back(std::string("isotypic ") + (r.isotypic ? "true" : "false") + " != expected");
    if (x.structure_case) {
      int got = classify_structure(s.h_embedding, plan.seed).case_label;
      if (got != *x.structure_case)
        r.mismatches.push_back("structure case " + std::to_string(got) + " != expected " +
                               std::to_string(*x.structure_case));
    }
    if (!s.has_parts()) {
      r.error = "no two-part split of m; GO check skipped";
    } else {
      r.filter = necessary_filter(s, plan.seed);
      SamplePlan sp{plan.samples, plan.seed, false, plan.tol, true};
      for (auto [l, m] : plan.pairs)
        r.runs.push_back({"two_param(" + fmt(l) + "," + fmt(m) + ")", go_check(s, two_param_metric(s, l, m), sp)});
      if (s.isotypic_pair() && module_intertwiner(s, 0, 1)) {
        Matrix w(2, 2);
        w << 2, 0.7, 0.7, 1.5;
        r.runs.push_back({"block(2,0.7,1.5)", go_check(s, block_metric(s, w), sp)});
      }
      bool any_not = false;
      bool all_go = true;
      for (const auto& run : r.runs) {
        any_not = any_not || run.verdict.status == GoStatus::not_go;
        all_go = all_go && run.verdict.consistent_with_go();
      }
      r.observed_go = any_not ? "no" : (all_go ? "yes" : "inconclusive");
      if (x.go && *x.go) {
        if (r.observed_go != "yes") r.mismatches.push_back("expected GO, observed " + r.observed_go);
        if (!r.filter->passed()) r.mismatches.push_back("expected GO but the necessary filter fails");
      } else if (x.go && !*x.go) {
        if (r.observed_go != "no" && r.filter->passed())
          r.mismatches.push_back("expected not GO, but the filter passes and go_check observed " + r.observed_go);
      }
    }
  } catch (const Error& ex) {
    r.error = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CatalogReport catalog_run(const CatalogFilter& filter, const CatalogPlan& plan) {
  CatalogReport out;
  for (const auto& e : catalog())
    if (filter.matches(e)) out.entries.push_back(run_entry(e, plan));
  return out;
}

}  // namespace orbitcheck
