#include <doctest.h>

#include "orbitcheck/random.hpp"
#include "orbitcheck/structure_filters.hpp"

using namespace orbitcheck;

namespace {

ReductiveSpace space(const std::string& name, const Params& p = {}) {
  return space_from_chain(named_embedding(name, p));
}

}  // namespace

TEST_CASE("centralizer of zero is everything") {
  auto so5 = classical_algebra("so", 5);
  Subspace all = whole(so5);
  CHECK(centralizer(all, Vector(Vector::Zero(10))).dim() == 10);
  CHECK(centralizer(all, QVector(10)).dim() == 10);
}

TEST_CASE("so(3) adjoint action: generic stabilizer is the line through the vector") {
  auto so3 = classical_algebra("so", 3);
  Subspace all = whole(so3);
  auto p = principal_isotropy_dim(all, all, 20, 3);
  CHECK(p.dim == 1);
  CHECK(p.exact);
  Rng rng(9);
  Vector u = gaussian_vector(rng, 3);
  Subspace c = centralizer(all, u);
  REQUIRE(c.dim() == 1);
  CHECK(c.distance(u) <= 1e-12 * u.norm());
}

TEST_CASE("exact and float centralizers agree on rational vectors") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  Rng rng(4);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 10; ++t) {
    QVector c(static_cast<size_t>(sp.m.dim()));
    for (auto& x : c) x = d(rng);
    QVector u = *sp.m.exact_basis() * c;
    CHECK(centralizer(sp.h, u).dim() == centralizer(sp.h, to_double(u)).dim());
  }
}

TEST_CASE("generic stabilizers: g2 on R^7 has dim 8, principal su(2) on the 7-module has dim 0") {
  auto g2 = space("g2_in_so(7)_in_so(8)");
  auto p = principal_isotropy_dim(g2.h, g2.parts[0], 20, 1);
  CHECK(p.dim == 8);
  auto v10 = space("principal_su2_in_sp(3)");
  REQUIRE(v10.modules[0].dim() == 7);
  CHECK(principal_isotropy_dim(v10.h, v10.modules[0], 20, 1).dim == 0);
  CHECK_FALSE(principal_isotropy_dim(v10.h, v10.modules[0], 20, 1).exact);
}

TEST_CASE("normalizer split: C and C~ commute and meet trivially") {
  auto sp = space("sp(n)_and_sp(1)_in_sp(n+1)", {{"n", "1"}});
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Vector x = sp.parts[0].basis() * unit_vector(rng, sp.parts[0].dim());
    Vector y = sp.parts[1].basis() * unit_vector(rng, sp.parts[1].dim());
    Vector u = t % 2 ? Vector(x + y) : x;
    auto s = normalizer_split(sp.h, u);
    CHECK(s.commutator_residual <= 1e-10);
    CHECK(s.c.dim() + s.c_tilde.dim() == s.n.dim());
    CHECK(intersect(s.c, s.c_tilde).dim() == 0);
  }
}

TEST_CASE("normalizer split edge cases") {
  auto sp = space("su(n)_in_u(n)_in_su(n+1)", {{"n", "2"}});
  auto s0 = normalizer_split(sp.h, Vector(Vector::Zero(sp.g->dim())));
  CHECK(s0.c.dim() == sp.h.dim());
  CHECK(s0.c_tilde.dim() == 0);
  // Generic vector of the 4-dim part: su(2) acts freely on the sphere.
  Rng rng(1);
  Vector y = sp.parts[1].basis() * unit_vector(rng, 4);
  auto s1 = normalizer_split(sp.h, y);
  CHECK(s1.c.dim() == 0);
  CHECK(s1.n.dim() == sp.h.dim());
  CHECK(s1.c_tilde.dim() == sp.h.dim());
}

TEST_CASE("bracket location of the two parts") {
  auto so5 = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto a = bracket_relation(so5);
  CHECK(a.location == BracketLocation::in_m2);
  CHECK(a.exact);
  auto v10 = space("principal_su2_in_sp(3)");
  CHECK(bracket_relation(v10).location == BracketLocation::mixed);
  CHECK_FALSE(bracket_relation(v10).exact);
  auto g2 = space("g2_in_so(7)_in_so(8)");
  CHECK(bracket_relation(g2).location != BracketLocation::zero);
}

TEST_CASE("necessary filter") {
  auto v10 = space("principal_su2_in_sp(3)");
  auto f = necessary_filter(v10);
  CHECK_FALSE(f.passed());
  CHECK(std::min(f.chi1.dim, f.chi2.dim) == 0);

  auto so5 = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto g = necessary_filter(so5);
  CHECK(g.passed());
  CHECK(g.has_eta);
  CHECK(g.eta.dim >= g.eta_required);

  auto so8 = space("g2_in_so(7)_in_so(8)");
  CHECK(necessary_filter(so8).passed());
}

TEST_CASE("no consequence violations on so(5)/u(2) and su(3)/su(2)") {
  for (auto sp : {space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}}), space("su(n)_in_u(n)_in_su(n+1)", {{"n", "2"}})}) {
    auto r = check_consequences(sp, 40, 5);
    CHECK(r.pairs == 40);
    CHECK(r.violations() == 0);
    CHECK(r.stabilizer_bound.applicable == 40);
  }
}

TEST_CASE("mixed brackets without stabilizers are flagged on sp(3)/principal su(2)") {
  auto v10 = space("principal_su2_in_sp(3)");
  auto r = check_consequences(v10, 20, 5);
  CHECK(r.mixed_bracket.applicable > 0);
  CHECK(r.mixed_bracket.violations > 0);
}
