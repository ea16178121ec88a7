#include "orbitcheck/structure_filters.hpp"

#include <algorithm>
#include <limits>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/random.hpp"

namespace orbitcheck {

namespace {

bool exact_ambient(const Subspace& s) {
  return s.exact() && s.ambient()->exact() && s.ambient()->exact_inner().has_value();
}

Subspace empty_like(const Subspace& s) {
  const AlgebraPtr& g = s.ambient();
  if (g->exact_inner()) return Subspace(g, QMatrix(g->dim(), 0));
  return Subspace(g, Matrix(g->dim(), 0));
}

// Columns: orthonormal coordinates of vectors of g.
Matrix orth(const LieAlgebra& g, const Matrix& v) { return g.chol_upper() * v; }

Vector random_in(const Subspace& s, Rng& rng) { return s.basis() * unit_vector(rng, s.dim()); }

QVector random_exact_in(const Subspace& s, Rng& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  const QMatrix& b = *s.exact_basis();
  QVector c(static_cast<size_t>(s.dim()));
  bool nonzero = false;
  while (!nonzero) {
    for (auto& x : c) {
      x = d(rng);
      nonzero = nonzero || x != 0;
    }
  }
  return b * c;
}

}  // namespace

Subspace centralizer(const Subspace& s, const Vector& u, double rel_tol) {
  const LieAlgebra& g = *s.ambient();
  const double un = g.norm(u);
  if (un == 0.0 || s.dim() == 0) return s;
  Vector w = u / un;
  Matrix cols(g.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) cols.col(i) = g.bracket(Vector(s.basis().col(i)), w);
  Matrix k = nullspace(orth(g, cols), rel_tol);
  if (k.cols() == 0) return empty_like(s);
  return Subspace(s.ambient(), Matrix(s.basis() * k), 1e-9);
}

Subspace centralizer(const Subspace& s, const QVector& u) {
  if (!exact_ambient(s)) return centralizer(s, to_double(u));
  const LieAlgebra& g = *s.ambient();
  if (is_zero(u) || s.dim() == 0) return s;
  const QMatrix& b = *s.exact_basis();
  QMatrix cols(g.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) cols.set_column(i, g.bracket(b.column(i), u));
  QMatrix k = exact_nullspace(cols);
  if (k.cols() == 0) return empty_like(s);
  return Subspace(s.ambient(), b * k);
}

CentralizerSplit normalizer_split(const Subspace& h, const Vector& u, double rel_tol) {
  const LieAlgebra& g = *h.ambient();
  CentralizerSplit out;
  out.u = u;
  out.c = centralizer(h, u, rel_tol);
  const int dc = out.c.dim();
  if (dc == 0) {
    out.n = h;
    out.c_tilde = h;
    return out;
  }
  if (dc == h.dim()) {
    out.n = h;
    out.c_tilde = empty_like(h);
    return out;
  }
  // z in h with (I - P_C)[z, c_j] = 0 for every basis vector c_j of C.
  const Matrix& cb = out.c.basis();
  Matrix rows(static_cast<Eigen::Index>(g.dim()) * dc, h.dim());
  for (int i = 0; i < h.dim(); ++i) {
    Vector z = h.basis().col(i);
    for (int j = 0; j < dc; ++j) {
      Vector v = g.bracket(z, Vector(cb.col(j)));
      v -= out.c.project(v);
      rows.block(static_cast<Eigen::Index>(j) * g.dim(), i, g.dim(), 1) = g.chol_upper() * v;
    }
  }
  Matrix k = nullspace(rows, rel_tol);
  out.n = Subspace(h.ambient(), Matrix(h.basis() * k), 1e-9);
  Matrix overlap = cb.transpose() * g.inner() * out.n.basis();
  Matrix free = nullspace(overlap, 1e-8);
  out.c_tilde = free.cols() ? Subspace(h.ambient(), Matrix(out.n.basis() * free), 1e-9) : empty_like(h);
  for (int a = 0; a < out.c_tilde.dim(); ++a)
    for (int b = 0; b < dc; ++b)
      out.commutator_residual = std::max(
          out.commutator_residual, g.norm(g.bracket(Vector(out.c_tilde.basis().col(a)), Vector(cb.col(b)))));
  return out;
}

std::string to_string(BracketLocation loc) {
  switch (loc) {
    case BracketLocation::zero: return "zero";
    case BracketLocation::in_m1: return "in_m1";
    case BracketLocation::in_m2: return "in_m2";
    case BracketLocation::mixed: return "mixed";
  }
  return "?";
}

BracketSweep bracket_relation(const ReductiveSpace& space, double tol) {
  if (!space.has_parts()) throw InputError("bracket_relation needs a space with two isotropy parts");
  const LieAlgebra& g = *space.g;
  const Subspace& p1 = space.parts[0];
  const Subspace& p2 = space.parts[1];
  BracketSweep out;
  if (exact_ambient(p1) && exact_ambient(p2)) {
    out.exact = true;
    const QMatrix& q = *g.exact_inner();
    QMatrix c1 = p1.exact_basis()->transpose() * q;
    QMatrix c2 = p2.exact_basis()->transpose() * q;
    bool any1 = false;
    bool any2 = false;
    for (int i = 0; i < p1.dim(); ++i)
      for (int j = 0; j < p2.dim(); ++j) {
        QVector v = g.bracket(p1.exact_basis()->column(i), p2.exact_basis()->column(j));
        any1 = any1 || !is_zero(c1 * v);
        any2 = any2 || !is_zero(c2 * v);
      }
    // Magnitudes still reported from the float data for diagnostics.
    out.location = any1 ? (any2 ? BracketLocation::mixed : BracketLocation::in_m1)
                        : (any2 ? BracketLocation::in_m2 : BracketLocation::zero);
  }
  for (int i = 0; i < p1.dim(); ++i)
    for (int j = 0; j < p2.dim(); ++j) {
      Vector v = g.bracket(Vector(p1.basis().col(i)), Vector(p2.basis().col(j)));
      out.m1_part = std::max(out.m1_part, p1.coords(v).norm());
      out.m2_part = std::max(out.m2_part, p2.coords(v).norm());
    }
  if (!out.exact) {
    const bool a = out.m1_part > tol;
    const bool b = out.m2_part > tol;
    out.location = a ? (b ? BracketLocation::mixed : BracketLocation::in_m1)
                     : (b ? BracketLocation::in_m2 : BracketLocation::zero);
  }
  return out;
}

PrincipalDim principal_isotropy_dim(const Subspace& s, const Subspace& module, int n_seeds, std::uint64_t seed) {
  PrincipalDim out;
  out.seeds = n_seeds;
  out.exact = exact_ambient(s) && exact_ambient(module);
  out.dim = std::numeric_limits<int>::max();
  if (module.dim() == 0 || n_seeds <= 0) {
    out.dim = s.dim();
    return out;
  }
  for (int t = 0; t < n_seeds; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    int d = out.exact ? centralizer(s, random_exact_in(module, rng)).dim() : centralizer(s, random_in(module, rng)).dim();
    out.draws.push_back(d);
    out.dim = std::min(out.dim, d);
  }
  return out;
}

bool FilterReport::passed() const {
  return std::all_of(conclusions.begin(), conclusions.end(), [](const FilterConclusion& c) { return c.pass; });
}

FilterReport necessary_filter(const ReductiveSpace& space, std::uint64_t seed, int n_seeds) {
  if (!space.has_parts()) throw InputError("necessary_filter needs a space with two isotropy parts");
  FilterReport r;
  r.bracket = bracket_relation(space);
  const Subspace& m1 = space.parts[0];
  const Subspace& m2 = space.parts[1];
  r.chi1 = principal_isotropy_dim(space.h, m1, n_seeds, derive_seed(seed, 21));
  r.chi2 = principal_isotropy_dim(space.h, m2, n_seeds, derive_seed(seed, 22));

  Ideals id = ideals(space.g, seed);
  const bool simple = id.center.dim() == 0 && id.simple.size() == 1;
  if (simple)
    r.conclusions.push_back({"bracket_nonzero", r.bracket.location != BracketLocation::zero,
                             "g is simple, so [m1, m2] must be nonzero"});

  auto need_one = [](const PrincipalDim& p, const std::string& which) {
    return FilterConclusion{"stabilizer_" + which, p.dim >= 1,
                            "generic stabilizer of h on " + which + " has dim " + std::to_string(p.dim) +
                                " (need >= 1)"};
  };
  switch (r.bracket.location) {
    case BracketLocation::mixed:
      r.conclusions.push_back(need_one(r.chi1, "m1"));
      r.conclusions.push_back(need_one(r.chi2, "m2"));
      break;
    case BracketLocation::in_m2:
    case BracketLocation::in_m1: {
      // The part that brackets into the other one closes up with h to a subalgebra k;
      // k then acts on the other part with large generic stabilizers.
      const bool into_m2 = r.bracket.location == BracketLocation::in_m2;
      const Subspace& small = into_m2 ? m1 : m2;
      const Subspace& big = into_m2 ? m2 : m1;
      r.conclusions.push_back(need_one(into_m2 ? r.chi1 : r.chi2, into_m2 ? "m1" : "m2"));
      Subspace k = span_sum(space.h, small);
      r.has_eta = true;
      r.eta = principal_isotropy_dim(k, big, n_seeds, derive_seed(seed, 23));
      r.eta_required = small.dim();
      r.conclusions.push_back({"stabilizer_k", r.eta.dim >= r.eta_required,
                               "generic stabilizer of k = h + " + std::string(into_m2 ? "m1" : "m2") + " on " +
                                   (into_m2 ? "m2" : "m1") + " has dim " + std::to_string(r.eta.dim) + " (need >= " +
                                   std::to_string(r.eta_required) + ")"});
      break;
    }
    case BracketLocation::zero:
      break;
  }
  return r;
}

int ConsequenceReport::violations() const {
  return trivial_normalizer.violations + nested_centralizer.violations + mixed_bracket.violations +
         stabilizer_bound.violations;
}

ConsequenceReport check_consequences(const ReductiveSpace& space, int n_pairs, std::uint64_t seed, double tol) {
  if (!space.has_parts()) throw InputError("check_consequences needs a space with two isotropy parts");
  const LieAlgebra& g = *space.g;
  const Subspace& m1 = space.parts[0];
  const Subspace& m2 = space.parts[1];
  ConsequenceReport r;
  BracketSweep sweep = bracket_relation(space);
  const bool one_sided = sweep.location == BracketLocation::in_m1 || sweep.location == BracketLocation::in_m2;
  std::optional<Subspace> k;
  if (one_sided) k = span_sum(space.h, sweep.location == BracketLocation::in_m2 ? m1 : m2);

  for (int t = 0; t < n_pairs; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    Vector x = random_in(m1, rng);
    Vector y = random_in(m2, rng);
    ++r.pairs;
    Vector br = g.bracket(x, y);
    const double in1 = m1.coords(br).norm();
    const double in2 = m2.coords(br).norm();
    Subspace cx = centralizer(space.h, x);
    Subspace cy = centralizer(space.h, y);
    CentralizerSplit split = normalizer_split(space.h, Vector(x + y));

    if (split.c_tilde.dim() == 0) {
      ++r.trivial_normalizer.applicable;
      if (g.norm(br) > tol) ++r.trivial_normalizer.violations;
    }
    Subspace both = intersect(cx, cy);
    if (both.dim() == cx.dim()) {
      ++r.nested_centralizer.applicable;
      if (in2 > tol) ++r.nested_centralizer.violations;
    }
    if (both.dim() == cy.dim()) {
      ++r.nested_centralizer.applicable;
      if (in1 > tol) ++r.nested_centralizer.violations;
    }
    if (in1 > tol && in2 > tol) {
      ++r.mixed_bracket.applicable;
      if (cx.dim() == 0 || cy.dim() == 0 || split.c_tilde.dim() < 2) ++r.mixed_bracket.violations;
    }
    if (k) {
      ++r.stabilizer_bound.applicable;
      const bool into_m2 = sweep.location == BracketLocation::in_m2;
      const Vector& v = into_m2 ? y : x;
      const int need = into_m2 ? m1.dim() : m2.dim();
      if (centralizer(*k, v).dim() < need) ++r.stabilizer_bound.violations;
    }
  }
  return r;
}

}  // namespace orbitcheck
