#include "orbitcheck/reductive.hpp"

#include <algorithm>
#include <numeric>

#include "orbitcheck/commutant.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/random.hpp"

namespace orbitcheck {

Matrix restricted_ad(const LieAlgebra& g, const Vector& z, const Subspace& w) {
  return w.basis().transpose() * g.inner() * g.ad(z) * w.basis();
}

std::vector<Matrix> isotropy_ops(const Subspace& h, const Subspace& w) {
  std::vector<Matrix> ops;
  const LieAlgebra& g = *w.ambient();
  for (int i = 0; i < h.dim(); ++i) ops.push_back(restricted_ad(g, h.basis().col(i), w));
  return ops;
}

bool is_subalgebra(const Subspace& s, double tol) {
  if (s.dim() == 0) return true;
  if (s.exact() && s.ambient()->exact() && s.ambient()->exact_inner()) return bracket_contained_exact(s, s, s);
  return bracket_leak(s, s, s) <= tol;
}

namespace {

// Exact subspace with the same span as s, found by rationalizing its projector and
// confirmed by exact invariance under `acting` (when given) and exact orthogonality to `perp`.
std::optional<Subspace> exact_version(const Subspace& s, const Subspace* acting, const Subspace* perp) {
  const AlgebraPtr& g = s.ambient();
  if (!g->exact() || !g->exact_inner()) return std::nullopt;
  if (s.exact()) return s;
  if (s.dim() == 0) return Subspace(g, QMatrix(g->dim(), 0));
  Matrix proj = s.basis() * s.basis().transpose() * g->inner();
  auto q = rationalize(proj);
  if (!q) return std::nullopt;
  QMatrix cols = *q;
  if (exact_rank(cols) != s.dim()) return std::nullopt;
  Subspace ex(g, cols);
  if (ex.dim() != s.dim()) return std::nullopt;
  if (acting != nullptr && acting->exact() && !bracket_contained_exact(*acting, ex, ex)) return std::nullopt;
  if (perp != nullptr && perp->exact() && perp->dim() > 0) {
    QMatrix c = perp->exact_basis()->transpose() * (*g->exact_inner() * *ex.exact_basis());
    if (!c.is_zero()) return std::nullopt;
  }
  return ex;
}

std::vector<Matrix> ops_or_zero(std::vector<Matrix> ops, int d) {
  if (ops.empty()) ops.push_back(Matrix::Zero(d, d));
  return ops;
}

}  // namespace

Ideals ideals(const AlgebraPtr& g, std::uint64_t seed) {
  Ideals out;
  const int n = g->dim();
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(killing_form(*g));
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().maxCoeff() > 1e-9 * std::max(1.0, top))
      throw InputError(g->name() + " is not compact: its Killing form is not negative semidefinite");
  }
  if (g->exact() && g->exact_inner()) {
    QMatrix z = center_exact(*g);
    out.center = Subspace(g, z.cols() ? z : QMatrix(n, 0));
  } else {
    out.center = Subspace(g, center(*g));
  }
  Subspace s = complement(out.center);
  if (s.dim() == 0) return out;
  Subspace all = whole(g);
  std::vector<Matrix> ops;
  for (int i = 0; i < s.dim(); ++i) ops.push_back(restricted_ad(*g, s.basis().col(i), s));
  Splitting sp = split_irreducible(ops, s.dim(), seed);
  for (const auto& v : sp.modules) {
    Subspace piece(g, Matrix(s.basis() * v), 1e-9);
    auto ex = exact_version(piece, g->exact_inner() ? &all : nullptr, nullptr);
    out.simple.push_back(ex ? *ex : piece);
  }
  return out;
}

ReductiveSpace reductive_space(const Embedding& h_in_g, const Embedding* k_in_g, double tol) {
  ReductiveSpace sp;
  sp.name = h_in_g.name;
  sp.g = h_in_g.codomain;
  sp.h_embedding = h_in_g;
  sp.h = image(h_in_g);
  sp.m = complement(sp.h);
  if (!is_subalgebra(sp.h, 1e-8)) throw InputError("h is not a subalgebra of " + sp.g->name());
  const bool exact = sp.h.exact() && sp.m.exact() && sp.g->exact() && sp.g->exact_inner();
  if (exact) {
    if (!bracket_contained_exact(sp.h, sp.m, sp.m))
      throw InvariantViolation("[h, m] is not contained in m (exact check)");
  } else {
    sp.reductive_residual = bracket_leak(sp.h, sp.m, sp.m);
    if (sp.reductive_residual > std::max(tol, 1e-8))
      throw InvariantViolation("[h, m] leaks out of m by " + std::to_string(sp.reductive_residual));
  }
  Ideals id = ideals(sp.g);
  if (id.center.dim() > 0 && sp.h.dim() > 0 && intersect(sp.h, id.center).dim() > 0)
    throw InputError("pair is not almost effective: h meets the center of " + sp.g->name());
  for (const auto& s : id.simple)
    if (sp.h.dim() >= s.dim() && intersect(sp.h, s).dim() == s.dim())
      throw InputError("pair is not almost effective: h contains an ideal of dimension " + std::to_string(s.dim()));
  if (k_in_g != nullptr) {
    if (k_in_g->codomain.get() != sp.g.get() && k_in_g->codomain->dim() != sp.g->dim())
      throw InputError("k embedding lands in a different algebra");
    Embedding ke = *k_in_g;
    ke.codomain = sp.g;
    sp.k_embedding = ke;
    sp.k = image(ke);
    if (intersect(sp.h, *sp.k).dim() != sp.h.dim()) throw InputError("h is not contained in k");
    if (!is_subalgebra(*sp.k, 1e-8)) throw InputError("k is not a subalgebra");
  }
  return sp;
}

void decompose_isotropy(ReductiveSpace& sp, std::uint64_t seed, double tol) {
  (void)tol;
  sp.modules.clear();
  sp.isotypic.clear();
  sp.parts.clear();
  sp.part_of.clear();
  const LieAlgebra& g = *sp.g;
  const int d = sp.m.dim();
  auto split_piece = [&](const Subspace& piece, std::uint64_t s) {
    std::vector<Subspace> out;
    if (piece.dim() == 0) return out;
    auto ops = isotropy_ops(sp.h, piece);
    Splitting split = split_irreducible(ops, piece.dim(), s);
    if (split.modules.size() == 1) {
      out.push_back(piece);
      return out;
    }
    for (const auto& v : split.modules) {
      Subspace mod(sp.g, Matrix(piece.basis() * v), 1e-9);
      auto ex = exact_version(mod, &sp.h, &sp.h);
      out.push_back(ex ? *ex : mod);
    }
    return out;
  };

  if (sp.k) {
    Subspace m1 = complement(sp.h, &*sp.k);
    Subspace m2 = complement(*sp.k);
    for (auto& mod : split_piece(m1, derive_seed(seed, 11))) {
      sp.modules.push_back(mod);
      sp.part_of.push_back(0);
    }
    for (auto& mod : split_piece(m2, derive_seed(seed, 12))) {
      sp.modules.push_back(mod);
      sp.part_of.push_back(1);
    }
    sp.ordering = "chain";
    if (m1.dim() > 0 && m2.dim() > 0) sp.parts = {m1, m2};
  } else {
    sp.modules = split_piece(sp.m, derive_seed(seed, 13));
    sp.ordering = "dimension";
    if (sp.modules.size() == 2) {
      bool c0 = is_subalgebra(span_sum(sp.h, sp.modules[0]), 1e-8);
      bool c1 = is_subalgebra(span_sum(sp.h, sp.modules[1]), 1e-8);
      if (c0 != c1) {
        sp.ordering = "subalgebra";
        if (c1) std::swap(sp.modules[0], sp.modules[1]);
      }
      sp.parts = sp.modules;
      sp.part_of = {0, 1};
    }
  }

  if (sp.parts.empty()) sp.part_of.assign(sp.modules.size(), -1);
  auto ops_m = ops_or_zero(isotropy_ops(sp.h, sp.m), d);
  Commutant c = commutant(ops_m, derive_seed(seed, 14));
  sp.metric_space_dim = d == 0 ? 0 : static_cast<int>(symmetric_part(c).size());
  std::vector<Matrix> coords;
  for (const auto& mod : sp.modules) coords.push_back(sp.m.basis().transpose() * g.inner() * mod.basis());
  sp.isotypic.assign(sp.modules.size(), -1);
  int next = 0;
  for (size_t i = 0; i < sp.modules.size(); ++i) {
    if (sp.isotypic[i] >= 0) continue;
    sp.isotypic[i] = next;
    for (size_t j = i + 1; j < sp.modules.size(); ++j)
      if (sp.isotypic[j] < 0 && sp.modules[i].dim() == sp.modules[j].dim() &&
          isomorphic_modules(c, coords[i], coords[j]))
        sp.isotypic[j] = next;
    ++next;
  }
  sp.module_residual = 0.0;
  for (const auto& mod : sp.modules)
    if (sp.h.dim() > 0) sp.module_residual = std::max(sp.module_residual, bracket_leak(sp.h, mod, mod));
  sp.decomposed = true;
}

ReductiveSpace space_from_chain(const Chain& c, std::uint64_t seed, bool decompose) {
  ReductiveSpace sp = reductive_space(c.h_in_g, c.k_in_g ? &*c.k_in_g : nullptr);
  sp.name = c.name;
  if (decompose) decompose_isotropy(sp, seed);
  return sp;
}

// ---- structure classification ------------------------------------------------

std::string case_description(int label) {
  switch (label) {
    case 1: return "g = f+f+f, h = diag(f)";
    case 2: return "g = g1+g2, h = h1+h2 with (g_i, h_i) isotropy irreducible";
    case 3: return "g = f+f+g1, h = diag(f)+h1 with (g1, h1) isotropy irreducible";
    case 4: return "g = l+k, h = diag(k)+k1 with (l, k+k1) isotropy irreducible";
    case 5: return "g = R^2, h = 0";
    case 6: return "g = R+g1, h in g1 with (g1, h) isotropy irreducible";
    case 7: return "g simple";
    default: return "unknown";
  }
}

namespace {

int projected_rank(const LieAlgebra& g, const Subspace& target, const Matrix& vectors) {
  if (vectors.cols() == 0 || target.dim() == 0) return 0;
  Matrix c = target.basis().transpose() * g.inner() * vectors;
  return numerical_rank(c, 1e-8);
}

}  // namespace

StructureReport classify_structure(const Embedding& h_in_g, std::uint64_t seed) {
  StructureReport r;
  const AlgebraPtr& g = h_in_g.codomain;
  Ideals gi = ideals(g, seed);
  Subspace hs = image(h_in_g);
  r.center_dim = gi.center.dim();
  for (const auto& s : gi.simple) r.ideal_dims.push_back(s.dim());

  Ideals hi = ideals(h_in_g.domain, derive_seed(seed, 1));
  r.l = hi.center.dim();
  r.m = static_cast<int>(hi.simple.size());
  const Matrix& emb = h_in_g.matrix;
  Matrix hz = emb * hi.center.basis();
  std::vector<Matrix> hsimple;
  for (const auto& s : hi.simple) hsimple.push_back(emb * s.basis());

  const int s = static_cast<int>(gi.simple.size());
  std::vector<std::vector<int>> a(hsimple.size(), std::vector<int>(s, 0));
  std::vector<int> uncovered;
  for (int j = 0; j < s; ++j) {
    int pd = projected_rank(*g, gi.simple[j], hs.basis());
    r.projection_dims.push_back(pd);
    if (pd < gi.simple[j].dim()) uncovered.push_back(j);
    r.u += projected_rank(*g, gi.simple[j], hz);
    for (size_t i = 0; i < hsimple.size(); ++i) a[i][j] = projected_rank(*g, gi.simple[j], hsimple[i]) > 0 ? 1 : 0;
  }
  r.p = static_cast<int>(uncovered.size());
  std::vector<std::pair<int, size_t>> vv;
  for (size_t i = 0; i < a.size(); ++i) vv.push_back({std::accumulate(a[i].begin(), a[i].end(), 0), i});
  std::stable_sort(vv.begin(), vv.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [v, i] : vv) r.v.push_back(v);
  r.inequality_lhs = r.p + (r.u - r.l);
  for (int v : r.v) r.inequality_lhs += v - 1;

  if (r.center_dim >= 3)
    throw InputError("center of dimension " + std::to_string(r.center_dim) + " gives more than two isotropy summands");
  if (r.center_dim == 2) {
    if (hs.dim() != 0) throw InputError("two-dimensional center with nonzero h gives more than two summands");
    r.case_label = 5;
    r.reason = "center of dimension 2 and h = 0";
    return r;
  }
  if (r.center_dim == 1) {
    Subspace derived = complement(gi.center);
    double leak = 0.0;
    for (int i = 0; i < hs.dim(); ++i) leak = std::max(leak, derived.distance(hs.basis().col(i)));
    r.case_label = leak <= 1e-8 ? 6 : 4;
    r.reason = leak <= 1e-8 ? "one-dimensional center, h inside [g,g]" : "one-dimensional center, h not inside [g,g]";
    return r;
  }
  if (r.inequality_lhs > 2)
    throw InputError("counting bound p + (u-l) + sum(v_i - 1) = " + std::to_string(r.inequality_lhs) +
                     " exceeds 2: more than two isotropy summands");
  if (s == 1) {
    r.case_label = 7;
    r.reason = "g simple";
    return r;
  }
  const int v1 = r.v.empty() ? 1 : r.v[0];
  const int v2 = r.v.size() > 1 ? r.v[1] : 1;
  if (v1 == 3) {
    r.case_label = 1;
    r.reason = "a simple ideal of h projects onto three ideals of g";
  } else if (v1 == 2 && v2 == 2) {
    r.case_label = 2;
    r.reason = "two simple ideals of h each project onto two ideals of g";
  } else if (v1 == 2) {
    if (r.p == 0) throw InputError("pair has a single isotropy summand");
    const int j = uncovered.front();
    const bool hits = a[vv[0].second][j] == 1;
    r.case_label = hits ? 4 : 3;
    r.reason = hits ? "the doubled ideal of h also meets the uncovered ideal of g"
                    : "the doubled ideal of h misses the uncovered ideal of g";
  } else if (r.p == 1) {
    r.case_label = 7;
    r.reason = "h lies in one simple ideal";
  } else if (r.p == 2) {
    r.case_label = 2;
    r.reason = "h splits across two simple ideals";
  } else {
    throw InvariantViolation("structure analysis matched no case (p = " + std::to_string(r.p) + ")");
  }
  return r;
}

}  // namespace orbitcheck
