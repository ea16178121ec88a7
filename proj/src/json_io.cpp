#include "orbitcheck/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/registry.hpp"

namespace orbitcheck {

std::string schema_name(const std::string& kind) { return "orbitcheck." + kind + "/1"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

namespace {

// A number read from JSON: exact unless it was written as a non-integer float.
struct Num {
  bool exact = true;
  Rational q;
  double v = 0.0;
};

Num read_num(const Json& x, const std::string& where) {
  Num n;
  if (x.is_string()) {
    try {
      n.q = parse_rational(x.get<std::string>());
    } catch (const std::exception&) {
      throw InputError(where + ": cannot parse number '" + x.get<std::string>() + "'");
    }
    n.v = to_double(n.q);
  } else if (x.is_number_integer()) {
    n.q = Rational(x.get<long>());
    n.v = static_cast<double>(x.get<long>());
  } else if (x.is_number()) {
    n.exact = false;
    n.v = x.get<double>();
  } else {
    throw InputError(where + ": expected a number or a \"p/q\" string");
  }
  return n;
}

// Rows of numbers; exact result when every entry is exact.
struct NumMatrix {
  Matrix f;
  std::optional<QMatrix> q;
};

NumMatrix read_matrix(const Json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  NumMatrix out;
  out.f = Matrix::Zero(rows, cols);
  QMatrix q(rows, cols);
  bool exact = true;
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      Num n = read_num(row[static_cast<size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      out.f(r, c) = n.v;
      if (n.exact) q(r, c) = n.q;
      exact = exact && n.exact;
    }
  }
  if (exact) out.q = q;
  return out;
}

Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json params_json(const Params& p) {
  Json o = Json::object();
  for (const auto& [k, v] : p) o[k] = v;
  return o;
}

Params params_from(const Json& j, const std::string& where) {
  Params p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw InputError(where + ": params must be an object");
  for (const auto& [k, v] : j.items()) p[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return p;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j[key];
}

void check_schema(const Json& j, const std::string& kind, const std::string& where) {
  if (j.is_object() && j.contains("schema") && j["schema"] != schema_name(kind))
    throw InputError(where + ": schema is " + j["schema"].dump() + ", expected \"" + schema_name(kind) + "\"");
}

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

StructureTensor tensor_from_json(const Json& j, const std::string& where) {
  check_schema(j, "algebra", where);
  const Json& dj = field(j, "dim", where);
  if (!dj.is_number_integer() || dj.get<int>() < 0) throw InputError(where + ".dim: expected a nonnegative integer");
  StructureTensor t;
  t.dim = dj.get<int>();
  const Json& s = field(j, "structure", where);
  if (!s.is_array()) throw InputError(where + ".structure: expected an array of [i, j, k, value]");
  for (size_t n = 0; n < s.size(); ++n) {
    std::string at = where + ".structure[" + std::to_string(n) + "]";
    const Json& e = s[n];
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number_integer())
      throw InputError(at + ": expected [i, j, k, value] with integer indices");
    int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
    for (int idx : {i, jj, k})
      if (idx < 0 || idx >= t.dim) throw InputError(at + ": index " + std::to_string(idx) + " out of range");
    Num v = read_num(e[3], at);
    if (v.exact) {
      t.add(i, jj, k, v.q);
    } else {
      t.add(i, jj, k, v.v);
    }
  }
  return t;
}

AlgebraPtr algebra_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    std::string text = j.get<std::string>();
    std::vector<AlgebraPtr> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '+')) parts.push_back(algebra_by_name(piece));
    if (parts.size() == 1) return parts.front();
    return std::make_shared<const LieAlgebra>(direct_sum(parts, text));
  }
  StructureTensor t = tensor_from_json(j, where);
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
  std::optional<QMatrix> qi;
  std::optional<Matrix> fi;
  if (j.contains("inner_product") && !j["inner_product"].is_null()) {
    NumMatrix m = read_matrix(j["inner_product"], t.dim, t.dim, where + ".inner_product");
    if (m.q) {
      qi = *m.q;
    } else {
      fi = m.f;
    }
  }
  try {
    return make_algebra(std::move(t), name, qi, fi);
  } catch (const InvariantViolation& ex) {
    throw InputError(where + ": " + ex.what());
  }
}

Embedding embedding_from_json(const Json& j, const AlgebraPtr& codomain, const std::string& where) {
  check_schema(j, "embedding", where);
  AlgebraPtr dom = algebra_from_json(field(j, "domain", where), where + ".domain");
  AlgebraPtr cod = j.contains("codomain") ? algebra_from_json(j["codomain"], where + ".codomain") : codomain;
  if (!cod) throw InputError(where + ": missing field 'codomain'");
  NumMatrix m = read_matrix(field(j, "matrix", where), cod->dim(), dom->dim(), where + ".matrix");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "embedding";
  Params p = params_from(j.contains("params") ? j["params"] : Json(nullptr), where + ".params");
  try {
    if (m.q) return make_embedding(dom, cod, *m.q, name, p);
    return make_embedding(dom, cod, m.f, name, p);
  } catch (const InvariantViolation& ex) {
    throw InputError(where + ": " + ex.what());
  }
}

Chain chain_from_json(const Json& j, const std::string& where) {
  check_schema(j, "space", where);
  if (!j.is_object()) throw InputError(where + ": expected an object");
  if (j.contains("chain")) {
    if (!j["chain"].is_string()) throw InputError(where + ".chain: expected a registry name");
    return named_embedding(j["chain"].get<std::string>(),
                           params_from(j.contains("params") ? j["params"] : Json(nullptr), where + ".params"));
  }
  AlgebraPtr g = algebra_from_json(field(j, "g", where), where + ".g");
  Chain c;
  c.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "space";
  c.h_in_g = embedding_from_json(field(j, "h_embedding", where), g, where + ".h_embedding");
  if (c.h_in_g.codomain->dim() != g->dim()) throw InputError(where + ".h_embedding: codomain is not g");
  if (j.contains("k_embedding") && !j["k_embedding"].is_null()) {
    c.k_in_g = embedding_from_json(j["k_embedding"], g, where + ".k_embedding");
    if (c.k_in_g->codomain->dim() != g->dim()) throw InputError(where + ".k_embedding: codomain is not g");
  }
  return c;
}

VectorInput vector_from_json(const Json& j, int dim, const std::string& where) {
  check_schema(j, "vector", where);
  const Json& a = j.is_object() ? field(j, "coords", where) : j;
  if (!a.is_array() || static_cast<int>(a.size()) != dim)
    throw InputError(where + ": expected " + std::to_string(dim) + " coordinates");
  VectorInput out;
  out.v = Vector(dim);
  QVector q(static_cast<size_t>(dim));
  bool exact = true;
  for (int i = 0; i < dim; ++i) {
    Num n = read_num(a[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]");
    out.v(i) = n.v;
    if (n.exact) q[static_cast<size_t>(i)] = n.q;
    exact = exact && n.exact;
  }
  if (exact) out.exact = q;
  return out;
}

// ---- outputs --------------------------------------------------------------

Json to_json(const LieAlgebra& g) {
  Json j;
  j["schema"] = schema_name("algebra");
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["exact"] = g.exact();
  Json s = Json::array();
  for (const auto& e : g.tensor().entries) {
    Json v = g.exact() ? rational_json(e.q) : Json(e.v);
    s.push_back(Json::array({e.i, e.j, e.k, v}));
  }
  j["structure"] = s;
  j["inner_product"] = g.exact_inner() ? matrix_json(*g.exact_inner()) : matrix_json(g.inner());
  return j;
}

Json to_json(const Embedding& e) {
  Json j;
  j["schema"] = schema_name("embedding");
  j["name"] = e.name;
  j["params"] = params_json(e.params);
  j["domain"] = e.domain->name();
  j["codomain"] = e.codomain->name();
  j["exact"] = e.is_exact();
  j["matrix"] = e.exact ? matrix_json(*e.exact) : matrix_json(e.matrix);
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["exact"] = r.exact;
  j["max_antisymmetry"] = r.max_antisymmetry;
  j["max_jacobi"] = r.max_jacobi;
  if (r.antisymmetry_at[0] >= 0) j["antisymmetry_at"] = r.antisymmetry_at;
  if (r.jacobi_at[0] >= 0) j["jacobi_at"] = r.jacobi_at;
  j["passed"] = r.passed;
  return j;
}

Json to_json(const EmbeddingReport& r) {
  Json j;
  j["homomorphism_residual"] = r.homomorphism_residual;
  j["exact_checked"] = r.exact_checked;
  j["rank"] = r.rank;
  j["injective"] = r.injective;
  j["index"] = r.index;
  j["index_misfit"] = r.index_misfit;
  j["passed"] = r.passed;
  return j;
}

Json space_summary(const ReductiveSpace& s) {
  Json j;
  j["name"] = s.name;
  j["g"] = s.g->name();
  j["dim_g"] = s.g->dim();
  j["dim_h"] = s.h.dim();
  j["dim_m"] = s.m.dim();
  j["exact"] = s.exact();
  j["has_k"] = s.k.has_value();
  j["reductive_residual"] = s.reductive_residual;
  if (s.decomposed) {
    Json mods = Json::array();
    for (size_t i = 0; i < s.modules.size(); ++i) {
      Json m;
      m["dim"] = s.modules[i].dim();
      m["isotypic_class"] = s.isotypic[i];
      m["part"] = s.part_of[i];
      m["exact"] = s.modules[i].exact();
      mods.push_back(m);
    }
    j["modules"] = mods;
    j["ordering"] = s.ordering;
    j["metric_space_dim"] = s.metric_space_dim;
    j["module_residual"] = s.module_residual;
    Json parts = Json::array();
    for (const auto& p : s.parts) parts.push_back(p.dim());
    j["part_dims"] = parts;
  }
  return j;
}

Json to_json(const StructureReport& r) {
  Json j;
  j["case"] = r.case_label;
  j["description"] = case_description(r.case_label);
  j["center_dim"] = r.center_dim;
  j["ideal_dims"] = r.ideal_dims;
  j["projection_dims"] = r.projection_dims;
  j["p"] = r.p;
  j["l"] = r.l;
  j["m"] = r.m;
  j["u"] = r.u;
  j["v"] = r.v;
  j["inequality_lhs"] = r.inequality_lhs;
  j["reason"] = r.reason;
  return j;
}

Json to_json(const PrincipalDim& p) {
  Json j;
  j["dim"] = p.dim;
  j["seeds"] = p.seeds;
  j["exact"] = p.exact;
  j["draws"] = p.draws;
  return j;
}

Json to_json(const FilterReport& r) {
  Json j;
  j["schema"] = schema_name("filter");
  j["passed"] = r.passed();
  Json b;
  b["location"] = to_string(r.bracket.location);
  b["m1_part"] = r.bracket.m1_part;
  b["m2_part"] = r.bracket.m2_part;
  b["exact"] = r.bracket.exact;
  j["bracket"] = b;
  j["chi1"] = to_json(r.chi1);
  j["chi2"] = to_json(r.chi2);
  if (r.has_eta) {
    j["eta"] = to_json(r.eta);
    j["eta_required"] = r.eta_required;
  }
  Json cs = Json::array();
  for (const auto& c : r.conclusions) cs.push_back(Json{{"rule", c.rule}, {"pass", c.pass}, {"detail", c.detail}});
  j["conclusions"] = cs;
  return j;
}

Json to_json(const ConsequenceReport& r) {
  auto tally = [](const RuleTally& t) { return Json{{"applicable", t.applicable}, {"violations", t.violations}}; };
  Json j;
  j["pairs"] = r.pairs;
  j["trivial_normalizer"] = tally(r.trivial_normalizer);
  j["nested_centralizer"] = tally(r.nested_centralizer);
  j["mixed_bracket"] = tally(r.mixed_bracket);
  j["stabilizer_bound"] = tally(r.stabilizer_bound);
  j["violations"] = r.violations();
  return j;
}

Json to_json(const GoWitness& w) {
  Json j;
  j["status"] = to_string(w.status);
  j["x"] = vector_json(w.x);
  j["z"] = vector_json(w.z);
  j["residual"] = w.residual;
  j["rank"] = w.rank;
  j["augmented_rank"] = w.augmented_rank;
  j["rank_gap"] = w.rank_gap;
  j["margin"] = w.margin;
  j["exact"] = w.exact;
  return j;
}

Json to_json(const GoVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["consistent_with_go"] = v.consistent_with_go();
  j["samples"] = v.samples;
  Json st;
  st["max_residual"] = v.max_residual;
  st["min_margin"] = v.min_margin;
  st["unsolvable"] = v.unsolvable;
  st["inconclusive"] = v.inconclusive;
  st["max_witness_norm"] = v.max_witness_norm;
  j["stats"] = st;
  if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
  return j;
}

Json to_json(const MetricOperator& a) {
  Json j;
  j["form"] = to_string(a.form);
  if (a.form == MetricOperator::Form::two_param) {
    j["lambda"] = a.lambda;
    j["mu"] = a.mu;
  }
  if (a.form == MetricOperator::Form::block) j["weights"] = matrix_json(a.weights);
  j["equivariance_residual"] = a.equivariance_residual;
  j["scalar"] = a.scalar();
  return j;
}

Json to_json(const Case4Result& r) {
  Json j;
  j["schema"] = schema_name("natred");
  j["kind"] = "case4";
  j["branch"] = r.l_normal ? "l_normal" : "generic";
  if (!r.l_normal) {
    j["weights"] = Json{{"alpha", r.alpha}, {"beta", r.beta}};
    j["beta_unscaled"] = r.beta_unscaled;
    j["identity"] = Json{{"lhs", r.identity_lhs}, {"rhs", r.identity_rhs}};
    j["residual"] = std::abs(r.identity_lhs - r.identity_rhs) /
                    std::max({std::abs(r.identity_lhs), std::abs(r.identity_rhs), 1e-300});
  }
  return j;
}

Json to_json(const Case4Exact& r) {
  Json j;
  j["schema"] = schema_name("natred");
  j["kind"] = "case4";
  j["exact"] = true;
  j["branch"] = r.l_normal ? "l_normal" : "generic";
  if (!r.l_normal) {
    j["weights"] = Json{{"alpha", to_string(r.alpha)}, {"beta", to_string(r.beta)}};
    j["beta_unscaled"] = to_string(r.beta_unscaled);
    j["identity"] = Json{{"lhs", to_string(r.identity_lhs)}, {"rhs", to_string(r.identity_rhs)}};
    j["identity_holds"] = r.identity_lhs == r.identity_rhs;
  }
  return j;
}

Json to_json(const LedgerObataSolution& s) {
  Json j;
  j["schema"] = schema_name("natred");
  j["kind"] = "ledger_obata";
  j["branch"] = to_string(s.branch);
  j["subgroup"] = subgroup_pattern(s.branch);
  if (s.triple) {
    j["weights"] = Json{{"alpha", s.triple->alpha}, {"beta", s.triple->beta}, {"gamma", s.triple->gamma}};
    j["assignment"] = s.assignment;
    j["system_residual"] = s.system_residual;
    j["sum"] = s.sum;
    j["sum_formula"] = s.sum_formula;
  }
  return j;
}

Json to_json(const LedgerObataExact& s) {
  Json j;
  j["schema"] = schema_name("natred");
  j["kind"] = "ledger_obata";
  j["exact"] = true;
  j["branch"] = "generic";
  j["weights"] = Json{{"alpha", to_string(s.alpha)}, {"beta", to_string(s.beta)}, {"gamma", to_string(s.gamma)}};
  j["system_holds"] = s.system_holds;
  j["sum"] = to_string(s.sum);
  j["sum_formula"] = to_string(s.sum_formula);
  return j;
}

Json to_json(const CatalogEntry& e) {
  Json j;
  j["id"] = e.id;
  j["family"] = e.family;
  j["source"] = e.source;
  j["label"] = e.label;
  j["constructible"] = e.constructible;
  if (e.constructible) {
    j["chain"] = e.chain;
    j["params"] = params_json(e.params);
  } else {
    j["missing"] = e.missing;
  }
  const auto& x = e.expected;
  Json ex;
  ex["go"] = x.go ? Json(*x.go ? "yes" : "no") : Json(nullptr);
  ex["metric_space_dim"] = opt(x.metric_space_dim);
  ex["module_dims"] = x.module_dims;
  ex["isotypic"] = opt(x.isotypic);
  ex["weakly_symmetric"] = opt(x.weakly_symmetric);
  ex["naturally_reductive"] = opt(x.naturally_reductive);
  if (x.structure_case) ex["structure_case"] = *x.structure_case;
  j["expected"] = ex;
  Json md = Json::object();
  for (const auto& [k, v] : e.metadata) md[k] = v;
  j["metadata"] = md;
  return j;
}

Json to_json(const EntryReport& r) {
  Json j;
  j["id"] = r.id;
  j["ran"] = r.ran;
  j["ok"] = r.ok();
  if (!r.ran) return j;
  j["module_dims"] = r.module_dims;
  j["isotypic"] = r.isotypic;
  j["metric_space_dim"] = r.metric_space_dim;
  if (r.filter) j["filter_passed"] = r.filter->passed();
  if (r.filter) j["bracket"] = to_string(r.filter->bracket.location);
  Json runs = Json::array();
  for (const auto& m : r.runs) {
    Json one;
    one["metric"] = m.metric;
    one["status"] = to_string(m.verdict.status);
    one["max_residual"] = m.verdict.max_residual;
    if (m.verdict.counterexample) one["margin"] = m.verdict.counterexample->margin;
    runs.push_back(one);
  }
  j["runs"] = runs;
  j["observed_go"] = r.observed_go;
  j["mismatches"] = r.mismatches;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json to_json(const CatalogReport& r) {
  Json j;
  j["schema"] = schema_name("catalog_run");
  Json es = Json::array();
  int ran = 0;
  for (const auto& e : r.entries) {
    es.push_back(to_json(e));
    ran += e.ran ? 1 : 0;
  }
  j["entries"] = es;
  j["ran"] = ran;
  j["skipped"] = static_cast<int>(r.entries.size()) - ran;
  j["mismatches"] = r.mismatches();
  j["ok"] = r.ok();
  return j;
}

// ---- tables ---------------------------------------------------------------

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream o;
    o << std::setprecision(6) << v.get<double>();
    return o.str();
  }
  return v.dump();
}

bool is_flat(const Json& v) {
  if (!v.is_object()) return false;
  for (const auto& [k, x] : v.items())
    if (x.is_object() || (x.is_array() && !x.empty() && (x[0].is_object() || x[0].is_array()))) return false;
  return true;
}

std::string inline_text(const Json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + scalar_text(v[i]);
  return s;
}

void render(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  for (const auto& [key, v] : j.items()) {
    if (key == "schema") continue;
    if (v.is_object()) {
      out << pad << key << ":\n";
      render(v, indent + 2, out);
    } else if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), is_flat)) {
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (const auto& [k, x] : row.items())
          if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      std::vector<size_t> width;
      for (const auto& c : cols) width.push_back(c.size());
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : v) {
        std::vector<std::string> line;
        for (size_t c = 0; c < cols.size(); ++c) {
          line.push_back(row.contains(cols[c]) ? inline_text(row[cols[c]]) : "");
          width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(line);
      }
      out << pad << key << ":\n";
      auto emit = [&](const std::vector<std::string>& line) {
        out << pad << "  ";
        for (size_t c = 0; c + 1 < line.size(); ++c)
          out << std::left << std::setw(static_cast<int>(width[c])) << line[c] << "  ";
        if (!line.empty()) out << line.back();
        out << "\n";
      };
      emit(cols);
      for (const auto& line : cells) emit(line);
    } else if (v.is_array() && !v.empty() && v[0].is_array()) {
      out << pad << key << ":\n";
      for (const auto& row : v) out << pad << "  " << inline_text(row) << "\n";
    } else {
      out << pad << key << ": " << inline_text(v) << "\n";
    }
  }
}

}  // namespace

std::string render_table(const Json& j) {
  std::ostringstream out;
  if (j.is_object()) {
    render(j, 0, out);
  } else {
    out << inline_text(j) << "\n";
  }
  return out.str();
}

}  // namespace orbitcheck
