#include "orbitcheck/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "orbitcheck/catalog.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/json_io.hpp"
#include "orbitcheck/natred.hpp"
#include "orbitcheck/random.hpp"
#include "orbitcheck/registry.hpp"

namespace orbitcheck {

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

// Zoo outputs must reproduce their identities to this level.
constexpr double kZooTol = 1e-12;

struct Common {
  bool json = false;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

struct SpaceArgs {
  std::string file;
  std::string chain;
  std::vector<std::string> params;
  std::string catalog_id;
};

void add_space_args(CLI::App* sub, SpaceArgs& s) {
  sub->add_option("space", s.file, "space document (orbitcheck.space/1)");
  sub->add_option("--chain", s.chain, "registry chain name (see `zoo list`)");
  sub->add_option("--param", s.params, "chain parameter key=value (repeatable)");
  sub->add_option("--catalog", s.catalog_id, "catalog entry id");
}

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& t : kv) {
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param '" + t + "' is not key=value");
    p[t.substr(0, eq)] = t.substr(eq + 1);
  }
  return p;
}

ReductiveSpace load_space(const SpaceArgs& s, std::uint64_t seed) {
  int given = !s.file.empty() + !s.chain.empty() + !s.catalog_id.empty();
  if (given != 1) throw InputError("give exactly one of a space file, --chain or --catalog");
  if (!s.catalog_id.empty()) return catalog_instantiate(catalog_entry(s.catalog_id), parse_params(s.params), seed);
  Chain c = s.chain.empty() ? chain_from_json(read_json_file(s.file), s.file) : named_embedding(s.chain, parse_params(s.params));
  return space_from_chain(c, seed);
}

double env_tol() {
  const char* v = std::getenv("ORBITCHECK_TOL");
  if (!v || !*v) return kDefaultTol;
  char* end = nullptr;
  double t = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(t > 0)) throw InputError(std::string("ORBITCHECK_TOL='") + v + "' is not a positive number");
  return t;
}

void emit(const Json& doc, const Common& c, std::ostream& out) {
  if (c.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << render_table(doc);
  }
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// ---- validate ---------------------------------------------------------------

int cmd_validate(const std::string& file, const Common& c, std::ostream& out) {
  Json doc = read_json_file(file);
  Json res;
  bool ok = true;
  if (doc.is_object() && doc.contains("matrix")) {
    Embedding e = embedding_from_json(doc, nullptr, file);
    EmbeddingReport r = check_embedding(e, c.tol);
    res["schema"] = schema_name("validation");
    res["kind"] = "embedding";
    res["report"] = to_json(r);
    ok = r.passed;
  } else if (doc.is_object() && (doc.contains("chain") || doc.contains("g"))) {
    Chain ch = chain_from_json(doc, file);
    ReductiveSpace s = space_from_chain(ch, c.seed, false);
    res["schema"] = schema_name("validation");
    res["kind"] = "space";
    EmbeddingReport h = check_embedding(ch.h_in_g, c.tol);
    res["h_embedding"] = to_json(h);
    ok = h.passed;
    if (ch.k_in_g) {
      EmbeddingReport k = check_embedding(*ch.k_in_g, c.tol);
      res["k_embedding"] = to_json(k);
      res["chain_mismatch"] = chain_mismatch(ch);
      ok = ok && k.passed && chain_mismatch(ch) <= c.tol;
    }
    res["reductive_residual"] = s.reductive_residual;
    ok = ok && s.reductive_residual <= c.tol;
  } else {
    StructureTensor t = tensor_from_json(doc, file);
    ValidationReport r = validate_algebra(t, c.tol);
    res["schema"] = schema_name("validation");
    res["kind"] = "algebra";
    res["report"] = to_json(r);
    ok = r.passed;
    if (ok && doc.contains("inner_product")) {
      AlgebraPtr g = algebra_from_json(doc, file);
      double adr = ad_invariance_residual(*g);
      res["ad_invariance_residual"] = adr;
      if (g->exact() && g->exact_inner()) res["ad_invariant_exact"] = ad_invariant_exact(*g);
      ok = adr <= c.tol;
    }
  }
  res["passed"] = ok;
  emit(res, c, out);
  return ok ? kOk : kMismatch;
}

// ---- check-go ---------------------------------------------------------------

struct GoArgs {
  double lambda = 1.0;
  double mu = 2.0;
  int samples = 100;
  bool exact = false;
  std::vector<double> block;
  std::string expect;
};

int cmd_check_go(const SpaceArgs& sa, const GoArgs& ga, const Common& c, std::ostream& out) {
  ReductiveSpace s = load_space(sa, c.seed);
  MetricOperator a;
  if (!ga.block.empty()) {
    if (ga.block.size() != 3) throw InputError("--block takes three weights w11,w12,w22");
    Matrix w(2, 2);
    w << ga.block[0], ga.block[1], ga.block[1], ga.block[2];
    a = block_metric(s, w);
  } else {
    a = two_param_metric(s, ga.lambda, ga.mu);
  }
  SamplePlan plan{ga.samples, c.seed, ga.exact, c.tol, true};
  GoVerdict v = go_check(s, a, plan);
  Json res;
  res["schema"] = schema_name("go_verdict");
  res["space"] = s.name;
  res["metric"] = to_json(a);
  res["verdict"] = to_json(v);
  int code = kOk;
  if (!ga.expect.empty()) {
    std::string got = v.consistent_with_go() ? "go" : (v.status == GoStatus::not_go ? "not_go" : "inconclusive");
    bool match = ga.expect == got || ga.expect == to_string(v.status);
    res["expected"] = ga.expect;
    res["matches_expected"] = match;
    code = match ? kOk : kMismatch;
  }
  emit(res, c, out);
  return code;
}

// ---- filter -----------------------------------------------------------------

int cmd_filter(const SpaceArgs& sa, int pairs, const std::string& expect, const Common& c, std::ostream& out) {
  ReductiveSpace s = load_space(sa, c.seed);
  FilterReport f = necessary_filter(s, c.seed);
  Json res = to_json(f);
  res["space"] = s.name;
  if (pairs > 0) res["consequences"] = to_json(check_consequences(s, pairs, c.seed));
  int code = kOk;
  if (!expect.empty()) {
    if (expect != "pass" && expect != "fail") throw InputError("--expect takes pass or fail");
    bool match = (expect == "pass") == f.passed();
    res["matches_expected"] = match;
    code = match ? kOk : kMismatch;
  }
  emit(res, c, out);
  return code;
}

// ---- centralizer ------------------------------------------------------------

int cmd_centralizer(const SpaceArgs& sa, const std::string& vec_file, bool random, const Common& c,
                    std::ostream& out) {
  if (vec_file.empty() == !random) throw InputError("give exactly one of --vector FILE or --random");
  ReductiveSpace s = load_space(sa, c.seed);
  const int n = s.g->dim();
  Vector u(n);
  std::optional<QVector> qu;
  if (random) {
    Rng rng(c.seed);
    std::normal_distribution<double> nd;
    Vector coeff(s.m.dim());
    for (int i = 0; i < coeff.size(); ++i) coeff(i) = nd(rng);
    u = s.m.basis() * coeff;
  } else {
    VectorInput vi = vector_from_json(read_json_file(vec_file), n, vec_file);
    u = vi.v;
    qu = vi.exact;
  }
  Subspace cz = (qu && s.h.exact()) ? centralizer(s.h, *qu) : centralizer(s.h, u);
  CentralizerSplit split = normalizer_split(s.h, u);
  Json res;
  res["schema"] = schema_name("centralizer");
  res["space"] = s.name;
  res["u"] = Json::array();
  for (int i = 0; i < n; ++i) res["u"].push_back(u(i));
  res["in_m"] = s.m.distance(u) <= c.tol * std::max(1.0, u.norm());
  res["centralizer_dim"] = cz.dim();
  res["centralizer_exact"] = cz.exact();
  res["normalizer_dim"] = split.n.dim();
  res["c_tilde_dim"] = split.c_tilde.dim();
  res["commutator_residual"] = split.commutator_residual;
  emit(res, c, out);
  return kOk;
}

// ---- natred -----------------------------------------------------------------

Rational exact_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw InputError(std::string(flag) + ": '" + text + "' is not a rational number");
  }
}

double float_arg(const std::string& text, const char* flag) {
  return to_double(exact_arg(text, flag));
}

int cmd_case4(const std::string& a, const std::string& b, bool exact, const Common& c, std::ostream& out) {
  if (exact) {
    emit(to_json(case4_natred(exact_arg(a, "--a"), exact_arg(b, "--b"))), c, out);
  } else {
    emit(to_json(case4_natred(float_arg(a, "--a"), float_arg(b, "--b"))), c, out);
  }
  return kOk;
}

int cmd_ledger_obata(const std::string& sa, const std::string& sb, const std::string& sc, bool exact,
                     const std::string& verify, const Common& c, std::ostream& out) {
  LedgerObataMetric m{float_arg(sa, "--A"), float_arg(sb, "--B"), float_arg(sc, "--C")};
  Json res;
  if (exact) {
    auto e = ledger_obata_solve_exact(exact_arg(sa, "--A"), exact_arg(sb, "--B"), exact_arg(sc, "--C"));
    if (!e) {
      res = to_json(ledger_obata_solve(m));
    } else {
      res = to_json(*e);
    }
  } else {
    res = to_json(ledger_obata_solve(m));
  }
  int code = kOk;
  if (!verify.empty()) {
    if (verify != "so3" && verify != "su2") throw InputError("--verify takes so3 or su2");
    auto sol = ledger_obata_solve(m);
    if (sol.triple) {
      double r = ledger_obata_verify(algebra_by_name(verify == "so3" ? "so(3)" : "su(2)"), m, *sol.triple);
      res["verify"] = Json{{"algebra", verify}, {"residual", r}, {"passed", r <= 1e-10}};
      if (r > 1e-10) code = kMismatch;
    } else {
      res["verify"] = Json{{"algebra", verify}, {"skipped", "degenerate branch"}};
    }
  }
  emit(res, c, out);
  return code;
}

// ---- catalog ----------------------------------------------------------------

CatalogFilter filter_from(const std::vector<std::string>& terms) { return parse_filter(join(terms, ",")); }

int cmd_catalog_list(const std::vector<std::string>& filters, const Common& c, std::ostream& out) {
  auto entries = catalog_list(filter_from(filters));
  Json res;
  res["schema"] = schema_name("catalog_list");
  res["count"] = entries.size();
  Json es = Json::array();
  for (const auto& e : entries) {
    if (c.json) {
      es.push_back(to_json(e));
    } else {
      const auto& g = e.expected.go;
      es.push_back(Json{{"id", e.id},
                        {"source", e.source},
                        {"constructible", e.constructible},
                        {"go", g ? (*g ? "yes" : "no") : "-"},
                        {"label", e.label}});
    }
  }
  res["entries"] = es;
  emit(res, c, out);
  return kOk;
}

int cmd_catalog_show(const std::string& id, const Common& c, std::ostream& out) {
  Json res{{"schema", schema_name("catalog_entry")}};
  res.update(to_json(catalog_entry(id)));
  emit(res, c, out);
  return kOk;
}

int cmd_catalog_run(const std::vector<std::string>& filters, int samples, const Common& c, std::ostream& out) {
  CatalogPlan plan;
  plan.samples = samples;
  plan.seed = c.seed;
  plan.tol = c.tol;
  CatalogReport r = catalog_run(filter_from(filters), plan);
  Json res = to_json(r);
  if (!c.json) {
    Json rows = Json::array();
    for (const auto& e : r.entries) {
      std::string filter = e.filter ? (e.filter->passed() ? "PASS" : "FAIL") : "-";
      std::string note = !e.ran ? "not constructible" : e.error.empty() ? join(e.mismatches, "; ") : e.error;
      rows.push_back(Json{{"id", e.id},
                          {"status", e.ran ? (e.ok() ? "ok" : "MISMATCH") : "skipped"},
                          {"modules", e.ran ? Json(e.module_dims) : Json("-")},
                          {"filter", filter},
                          {"go", e.observed_go.empty() ? "-" : e.observed_go},
                          {"note", note}});
    }
    res["entries"] = rows;
  }
  emit(res, c, out);
  return r.ok() ? kOk : kMismatch;
}

// ---- zoo --------------------------------------------------------------------

Json zoo_check_one(const RegistryInfo& info, const Common& c, bool& ok) {
  Chain ch = named_embedding(info.name, info.defaults);
  Json row;
  row["name"] = info.name;
  double jac = 0.0;
  double adi = 0.0;
  std::vector<AlgebraPtr> algs{ch.h_in_g.codomain, ch.h_in_g.domain};
  if (ch.k_in_g) algs.push_back(ch.k_in_g->domain);
  for (const auto& g : algs) {
    jac = std::max(jac, validate_algebra(g->tensor(), kZooTol).max_jacobi);
    adi = std::max(adi, ad_invariance_residual(*g));
  }
  double hom = check_embedding(ch.h_in_g, kZooTol).homomorphism_residual;
  if (ch.k_in_g) hom = std::max(hom, check_embedding(*ch.k_in_g, kZooTol).homomorphism_residual);
  row["jacobi"] = jac;
  row["ad_invariance"] = adi;
  row["homomorphism"] = hom;
  row["chain_mismatch"] = chain_mismatch(ch);
  bool pass = jac <= kZooTol && adi <= kZooTol && hom <= kZooTol && chain_mismatch(ch) <= kZooTol;
  // Plain embeddings such as u(k) in so(2k) need not give an effective pair.
  try {
    ReductiveSpace s = space_from_chain(ch, c.seed);
    row["reductive"] = s.reductive_residual;
    row["equivariance"] = s.module_residual;
    row["modules"] = module_dims(s);
    row["metric_space_dim"] = s.metric_space_dim;
    pass = pass && s.reductive_residual <= kZooTol && s.module_residual <= kZooTol;
  } catch (const InputError& e) {
    row["modules"] = "-";
    row["note"] = e.what();
  }
  row["passed"] = pass;
  ok = ok && pass;
  return row;
}

int cmd_zoo(const std::string& action, const std::string& name, const std::vector<std::string>& params,
            const Common& c, std::ostream& out) {
  Json res;
  if (action == "list") {
    res["schema"] = schema_name("zoo_list");
    Json rows = Json::array();
    for (const auto& info : embedding_registry()) {
      std::vector<std::string> d;
      for (const auto& [k, v] : info.defaults) d.push_back(k + "=" + v);
      rows.push_back(Json{{"name", info.name}, {"exact", info.exact}, {"defaults", join(d, ",")}, {"summary", info.summary}});
    }
    res["chains"] = rows;
    emit(res, c, out);
    return kOk;
  }
  if (action == "show") {
    if (name.empty()) throw InputError("zoo show needs a chain or algebra name");
    bool is_chain = std::any_of(embedding_registry().begin(), embedding_registry().end(),
                                [&](const RegistryInfo& i) { return i.name == name; });
    if (!is_chain) {
      res = to_json(*algebra_by_name(name));
      emit(res, c, out);
      return kOk;
    }
    Chain ch = named_embedding(name, parse_params(params));
    res["schema"] = schema_name("chain");
    res["name"] = ch.name;
    res["g"] = ch.h_in_g.codomain->name();
    res["h"] = ch.h_in_g.domain->name();
    if (ch.k_in_g) res["k"] = ch.k_in_g->domain->name();
    res["h_embedding"] = to_json(ch.h_in_g);
    if (ch.k_in_g) res["k_embedding"] = to_json(*ch.k_in_g);
    res["chain_mismatch"] = chain_mismatch(ch);
    emit(res, c, out);
    return kOk;
  }
  if (action == "check") {
    bool ok = true;
    Json rows = Json::array();
    for (const auto& info : embedding_registry())
      if (name.empty() || info.name == name) rows.push_back(zoo_check_one(info, c, ok));
    if (rows.empty()) throw InputError("unknown chain '" + name + "'");
    res["schema"] = schema_name("zoo_check");
    res["tolerance"] = kZooTol;
    res["chains"] = rows;
    res["passed"] = ok;
    emit(res, c, out);
    return ok ? kOk : kMismatch;
  }
  throw InputError("zoo takes list, show or check");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic orbit checks for homogeneous spaces G/H", "orbitcheck"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  std::optional<double> tol_flag;
  app.add_flag("--json", c.json, "write JSON instead of a table");
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--tol", tol_flag, "numerical tolerance (default 1e-9, or ORBITCHECK_TOL)");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check an algebra, embedding or space document");
  validate->add_option("file", validate_file)->required();

  SpaceArgs sa;
  auto* decompose = app.add_subcommand("decompose", "split m into irreducible isotropy modules");
  add_space_args(decompose, sa);

  int expect_case = 0;
  auto* classify = app.add_subcommand("classify", "structural case of (g, h)");
  add_space_args(classify, sa);
  classify->add_option("--expect", expect_case, "expected case number");

  GoArgs ga;
  auto* check_go = app.add_subcommand("check-go", "sample the geodesic orbit condition");
  add_space_args(check_go, sa);
  check_go->add_option("--lambda", ga.lambda, "weight on m1")->capture_default_str();
  check_go->add_option("--mu", ga.mu, "weight on m2")->capture_default_str();
  check_go->add_option("--samples", ga.samples)->capture_default_str()->check(CLI::PositiveNumber);
  check_go->add_flag("--exact", ga.exact, "rational arithmetic (two-parameter metrics only)");
  check_go->add_option("--block", ga.block, "block metric weights w11,w12,w22")->delimiter(',')->expected(3);
  check_go->add_option("--expect", ga.expect, "go, not_go, or a status name");

  int pairs = 0;
  std::string filter_expect;
  auto* filter = app.add_subcommand("filter", "necessary conditions from centralizer dimensions");
  add_space_args(filter, sa);
  filter->add_option("--consequences", pairs, "also check consequences on this many sampled pairs");
  filter->add_option("--expect", filter_expect, "pass or fail");

  std::string vec_file;
  bool random_vec = false;
  auto* cent = app.add_subcommand("centralizer", "centralizer and normalizer in h of a vector");
  add_space_args(cent, sa);
  cent->add_option("--vector", vec_file, "vector document (orbitcheck.vector/1)");
  cent->add_flag("--random", random_vec, "a seeded random vector of m");

  auto* natred = app.add_subcommand("natred", "naturally reductive weights");
  natred->require_subcommand(1);
  std::string a4, b4;
  bool exact4 = false;
  auto* case4 = natred->add_subcommand("case4", "weights for the two-module case with [m1, m2] in m1");
  case4->add_option("--a", a4)->required();
  case4->add_option("--b", b4)->required();
  case4->add_flag("--exact", exact4);
  std::string la, lb, lc, lverify;
  bool lexact = false;
  auto* lo = natred->add_subcommand("ledger-obata", "weights on F^3 inducing the metric (A, B, C) on F^3/diag");
  lo->add_option("--A", la)->required();
  lo->add_option("--B", lb)->required();
  lo->add_option("--C", lc)->required();
  lo->add_flag("--exact", lexact);
  lo->add_option("--verify", lverify, "so3 or su2: check against the constructed space");

  auto* cat = app.add_subcommand("catalog", "registry of named spaces");
  cat->require_subcommand(1);
  std::vector<std::string> filters;
  auto* cat_list = cat->add_subcommand("list");
  cat_list->add_option("--filter", filters, "key=value over id, family, source, constructible, go");
  std::string show_id;
  auto* cat_show = cat->add_subcommand("show");
  cat_show->add_option("id", show_id)->required();
  int cat_samples = CatalogPlan{}.samples;
  auto* cat_run = cat->add_subcommand("run");
  cat_run->add_option("--filter", filters, "key=value over id, family, source, constructible, go");
  cat_run->add_option("--samples", cat_samples)->capture_default_str()->check(CLI::PositiveNumber);

  std::string zoo_action, zoo_name;
  std::vector<std::string> zoo_params;
  auto* zoo = app.add_subcommand("zoo", "built-in algebras and chains");
  zoo->add_option("action", zoo_action, "list, show or check")->required();
  zoo->add_option("name", zoo_name);
  zoo->add_option("--param", zoo_params, "chain parameter key=value");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    c.tol = tol_flag ? *tol_flag : env_tol();
    if (!(c.tol > 0)) throw InputError("--tol must be positive");
    if (validate->parsed()) return cmd_validate(validate_file, c, out);
    if (decompose->parsed()) {
      ReductiveSpace s = load_space(sa, c.seed);
      Json res{{"schema", schema_name("space")}};
      res.update(space_summary(s));
      emit(res, c, out);
      return kOk;
    }
    if (classify->parsed()) {
      ReductiveSpace s = load_space(sa, c.seed);
      StructureReport r = classify_structure(s.h_embedding, c.seed);
      Json res{{"schema", schema_name("structure")}, {"space", s.name}};
      res.update(to_json(r));
      int code = kOk;
      if (expect_case != 0) {
        res["matches_expected"] = r.case_label == expect_case;
        code = r.case_label == expect_case ? kOk : kMismatch;
      }
      emit(res, c, out);
      return code;
    }
    if (check_go->parsed()) return cmd_check_go(sa, ga, c, out);
    if (filter->parsed()) return cmd_filter(sa, pairs, filter_expect, c, out);
    if (cent->parsed()) return cmd_centralizer(sa, vec_file, random_vec, c, out);
    if (case4->parsed()) return cmd_case4(a4, b4, exact4, c, out);
    if (lo->parsed()) return cmd_ledger_obata(la, lb, lc, lexact, lverify, c, out);
    if (cat_list->parsed()) return cmd_catalog_list(filters, c, out);
    if (cat_show->parsed()) return cmd_catalog_show(show_id, c, out);
    if (cat_run->parsed()) return cmd_catalog_run(filters, cat_samples, c, out);
    if (zoo->parsed()) return cmd_zoo(zoo_action, zoo_name, zoo_params, c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Unconstructible& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}

}  // namespace orbitcheck
