#include <doctest.h>

#include <cmath>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/go_engine.hpp"
#include "orbitcheck/random.hpp"

using namespace orbitcheck;

namespace {

ReductiveSpace space(const std::string& name, const Params& p = {}) {
  return space_from_chain(named_embedding(name, p));
}

Vector random_in(const Subspace& s, Rng& rng) { return s.basis() * unit_vector(rng, s.dim()); }

// Residual of the geodesic-vector condition evaluated directly in g:
// the m-component of [X + Z, A X], where A is applied through the part projections.
double direct_condition(const ReductiveSpace& sp, double lambda, double mu, const Vector& x, const Vector& z) {
  const LieAlgebra& g = *sp.g;
  Vector ax = lambda * sp.parts[0].project(x) + mu * sp.parts[1].project(x);
  Vector v = g.bracket(Vector(x + z), ax);
  return g.norm(sp.m.project(v));
}

}  // namespace

TEST_CASE("normal metric: every witness is zero") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto a = two_param_metric(sp, 3, 3);
  CHECK(a.scalar());
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    auto w = go_witness_general(sp, a, random_in(sp.m, rng));
    CHECK(w.status == WitnessStatus::solved);
    CHECK(w.residual == 0.0);
    CHECK(w.z.norm() == 0.0);
  }
  auto v = go_check(sp, a, {20, 0});
  CHECK(v.status == GoStatus::normal_trivial);
  CHECK(v.consistent_with_go());
}

TEST_CASE("so(5)/u(2): witnesses solve the condition evaluated directly") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto a = two_param_metric(sp, 1, 2);
  CHECK(a.equivariance_residual <= 1e-12);
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    Vector x = random_in(sp.m, rng);
    auto w = go_witness_general(sp, a, x);
    REQUIRE(w.status == WitnessStatus::solved);
    CHECK(w.residual <= 1e-10);
    CHECK(sp.h.distance(w.z) <= 1e-12);
    CHECK(direct_condition(sp, 1, 2, x, w.z) <= 1e-10);
  }
}

TEST_CASE("sp(3)/principal su(2) is not GO, with a robust rank gap") {
  auto sp = space("principal_su2_in_sp(3)");
  auto a = two_param_metric(sp, 1, 2);
  auto v = go_check(sp, a, {100, 0});
  CHECK(v.status == GoStatus::not_go);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->rank_gap >= 1);
  CHECK(v.counterexample->margin >= 1e3 * kDefaultTol);
}

TEST_CASE("positive verdicts on small spaces") {
  for (auto [name, p] : std::vector<std::pair<std::string, Params>>{
           {"u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}}},
           {"sp(n)_and_sp(1)_in_sp(n+1)", {{"n", "1"}}},
           {"su(n)_in_u(n)_in_su(n+1)", {{"n", "2"}}}}) {
    auto sp = space(name, p);
    for (auto [l, m] : std::vector<std::pair<double, double>>{{1, 2}, {2, 1}, {1, 5}}) {
      auto v = go_check(sp, two_param_metric(sp, l, m), {50, 3});
      CHECK_MESSAGE(v.status == GoStatus::go_consistent, name);
      CHECK(v.max_residual <= 1e-8);
    }
  }
}

TEST_CASE("exact mode agrees with float mode") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto v = go_check(sp, two_param_metric(sp, 1, 2), {20, 0, true});
  CHECK(v.status == GoStatus::go_consistent);
  auto w = go_witness_exact(sp, 1, 3, QVector{1, 2, 0, -1, 3, 1});
  CHECK(w.status == WitnessStatus::solved);
  CHECK(w.rank_gap == 0);
}

TEST_CASE("verdicts are scale invariant") {
  auto sp = space("principal_su2_in_sp(3)");
  auto a = go_check(sp, two_param_metric(sp, 1, 2), {10, 4});
  auto b = go_check(sp, two_param_metric(sp, 7, 14), {10, 4});
  CHECK(a.status == b.status);
}

TEST_CASE("so(8)/g2 block metrics") {
  auto sp = space("g2_in_so(7)_in_so(8)");
  auto t = module_intertwiner(sp, 0, 1);
  REQUIRE(t);
  CHECK((t->transpose() * *t - Matrix::Identity(7, 7)).norm() <= 1e-10);
  Matrix w(2, 2);
  w << 2, 0.7, 0.7, 1.5;
  auto a = block_metric(sp, w);
  CHECK(a.equivariance_residual <= 1e-12);
  CHECK_FALSE(a.scalar());
  auto v = go_check(sp, a, {40, 1});
  CHECK(v.status == GoStatus::go_consistent);
  CHECK(v.max_residual <= 1e-8);
  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(block_metric(sp, bad), InputError);
}

TEST_CASE("non-equivariant operators are rejected") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  Matrix a = Matrix::Identity(6, 6);
  a(0, 0) = 2;
  CHECK_THROWS_AS(metric_from_matrix(sp, a), InvariantViolation);
  CHECK_NOTHROW(metric_from_matrix(sp, two_param_metric(sp, 1, 4).matrix));
}

TEST_CASE("geodesic graph: zero bracket gives zero, generic pairs are unique") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto r0 = geodesic_graph(sp, 1, 3, Vector(Vector::Zero(10)), Vector(Vector::Zero(10)));
  CHECK(r0.z.norm() == 0.0);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    Vector x = random_in(sp.parts[0], rng);
    Vector y = random_in(sp.parts[1], rng);
    auto r = geodesic_graph(sp, 1, 3, x, y);
    CHECK(r.status == WitnessStatus::solved);
    CHECK(r.residual <= 1e-10);
    CHECK(r.kernel_dim == 0);
    // Z normalizes C_h(X+Y) and is orthogonal to it.
    auto split = normalizer_split(sp.h, Vector(x + y));
    CHECK(split.n.distance(r.z) <= 1e-10);
    CHECK(split.c.coords(r.z).norm() <= 1e-10);
  }
  auto su3 = space("su(n)_in_u(n)_in_su(n+1)", {{"n", "2"}});
  Vector x = random_in(su3.parts[0], rng);
  Vector y = random_in(su3.parts[1], rng);
  auto r = geodesic_graph(su3, 2, 5, x, y);
  CHECK(r.status == WitnessStatus::solved);
  CHECK(r.kernel_dim == 0);
}

TEST_CASE("Z_X, Z_Y reconstruct the geodesic graph") {
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    Vector x = random_in(sp.parts[0], rng);
    Vector y = random_in(sp.parts[1], rng);
    auto d = zxzy_decompose(sp, x, y);
    CHECK(d.status == WitnessStatus::solved);
    CHECK(d.kernel_dim == 0);
    for (auto [l, m] : std::vector<std::pair<double, double>>{{1, 2}, {3, 1}, {1, 7}}) {
      double gap = reconstruction_gap(sp, l, m, x, y);
      CHECK(gap >= 0);
      CHECK(gap <= 1e-9);
    }
  }
}

TEST_CASE("bracket inside one part forces the other witness to vanish") {
  // so(5)/u(2): [m1, m2] lies in m2, so [Z_Y, X] (which lies in m1) has to vanish.
  auto sp = space("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  Rng rng(5);
  Vector x = random_in(sp.parts[0], rng);
  Vector y = random_in(sp.parts[1], rng);
  auto d = zxzy_decompose(sp, x, y);
  REQUIRE(d.status == WitnessStatus::solved);
  CHECK(sp.g->norm(sp.g->bracket(d.zy, x)) <= 1e-10);
}
