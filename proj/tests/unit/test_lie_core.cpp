#include <doctest.h>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/lie_algebra.hpp"
#include "orbitcheck/zoo.hpp"

using namespace orbitcheck;

namespace {

StructureTensor so3_tensor() {
  StructureTensor t;
  t.dim = 3;
  t.add_antisymmetric(0, 1, 2, 1);
  t.add_antisymmetric(1, 2, 0, 1);
  t.add_antisymmetric(2, 0, 1, 1);
  return t;
}

// Killing form straight from the definition tr(ad X ad Y), with ad built from
// the raw tensor rather than the library's cached matrices.
Matrix killing_by_trace(const StructureTensor& t) {
  const int n = t.dim;
  std::vector<Matrix> ad(n, Matrix::Zero(n, n));
  for (const auto& e : t.entries) ad[e.i](e.k, e.j) += e.v;
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = (ad[i] * ad[j]).trace();
  return b;
}

}  // namespace

TEST_CASE("abelian tensor validates with zero residuals") {
  StructureTensor t;
  t.dim = 4;
  auto rep = validate_algebra(t);
  CHECK(rep.passed);
  CHECK(rep.max_jacobi == 0.0);
  CHECK(rep.max_antisymmetry == 0.0);
}

TEST_CASE("so(3) cyclic tensor validates; a single flipped sign breaks Jacobi") {
  CHECK(validate_algebra(so3_tensor()).passed);
  StructureTensor bad = so3_tensor();
  for (auto& e : bad.entries)
    if (e.i == 0 && e.j == 1 && e.k == 2) {
      e.q = -e.q;
      e.v = -e.v;
    }
  auto rep = validate_algebra(bad);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_jacobi > 0.0);
  CHECK(rep.max_antisymmetry > 0.0);
}

TEST_CASE("out-of-range index is rejected with its location") {
  StructureTensor t;
  t.dim = 2;
  t.add(0, 1, 5, Rational(1));
  CHECK_THROWS_AS(validate_algebra(t), InputError);
  try {
    validate_algebra(t);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("[0][1][5]") != std::string::npos);
  }
}

TEST_CASE("bracket: antisymmetry, so(3) basis, direct sums") {
  auto g = make_algebra(so3_tensor(), "so3");
  Vector x = Vector::Random(3);
  CHECK(g->bracket(x, x).norm() == doctest::Approx(0.0));
  Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1);
  CHECK((g->bracket(e1, e2) - Vector::Unit(3, 2)).norm() == doctest::Approx(0.0));
  auto s = direct_sum({g, g});
  Vector a = Vector::Zero(6), b = Vector::Zero(6);
  a.head(3) = Vector::Random(3);
  b.tail(3) = Vector::Random(3);
  CHECK(s.bracket(a, b).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(g->bracket(Vector::Zero(2), x), InputError);
}

TEST_CASE("Killing forms") {
  auto g = make_algebra(so3_tensor(), "so3");
  Matrix b = killing_form(*g);
  CHECK((b + 2.0 * Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));
  QMatrix bq = killing_form_exact(*g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(bq(i, j) == (i == j ? -2 : 0));
  CHECK((b - killing_by_trace(g->tensor())).norm() == doctest::Approx(0.0));

  StructureTensor ab;
  ab.dim = 2;
  auto r2 = make_algebra(ab, "R2");
  CHECK(killing_form(*r2).norm() == 0.0);
  CHECK((r2->inner() - Matrix::Identity(2, 2)).norm() == 0.0);

  auto s3 = direct_sum({g, g, g});
  CHECK(s3.dim() == 9);
  CHECK((killing_form(s3) + 2.0 * Matrix::Identity(9, 9)).norm() == doctest::Approx(0.0));
}

TEST_CASE("direct_sum edge cases and centers") {
  auto g = make_algebra(so3_tensor(), "so3");
  auto one = direct_sum({g});
  CHECK(one.dim() == 3);
  CHECK((one.inner() - g->inner()).norm() == 0.0);
  CHECK_THROWS_AS(direct_sum({}), InputError);
  auto u1 = classical_algebra("torus", 1);
  auto su2 = classical_algebra("su", 2);
  auto s = direct_sum({u1, su2});
  CHECK(s.dim() == 4);
  CHECK(center_exact(s).cols() == 1);
  CHECK(center(s).cols() == 1);
}

TEST_CASE("zoo algebras validate, have the right dimensions and ad-invariant inner products") {
  struct Case {
    const char* family;
    int n;
    int dim;
  };
  for (Case c : {Case{"so", 3, 3}, Case{"so", 5, 10}, Case{"so", 8, 28}, Case{"su", 2, 3}, Case{"su", 3, 8},
                 Case{"u", 2, 4}, Case{"u", 3, 9}, Case{"sp", 1, 3}, Case{"sp", 2, 10}, Case{"sp", 3, 21},
                 Case{"torus", 3, 3}}) {
    CAPTURE(c.family);
    CAPTURE(c.n);
    auto g = classical_algebra(c.family, c.n);
    CHECK(g->dim() == c.dim);
    CHECK(classical_dim(c.family, c.n) == c.dim);
    CHECK(validate_algebra(g->tensor()).passed);
    CHECK(ad_invariant_exact(*g));
    CHECK(ad_invariance_residual(*g) <= 1e-12);
  }
  // so(3) in the E_ij - E_ji basis: [e01, e02] = -e12 etc; Killing -2 I.
  auto so3 = classical_algebra("so", 3);
  CHECK((killing_form(*so3) + 2.0 * Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(classical("so", 1), InputError);
  CHECK_THROWS_AS(classical("e", 6), InputError);
}

TEST_CASE("u(n) inner product is -Killing on su(n) plus the dot product on the center") {
  auto u2 = classical_algebra("u", 2);
  auto su2 = classical_algebra("su", 2);
  const QMatrix& q = *u2->exact_inner();
  const QMatrix& qs = *su2->exact_inner();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(q(i, j) == qs(i, j));
  CHECK(q(3, 3) == 1);
  CHECK(q(0, 3) == 0);
}

TEST_CASE("subspace complement, intersection and sum") {
  auto g = classical_algebra("so", 4);
  QMatrix a(6, 2);
  a(0, 0) = 1;
  a(1, 1) = 1;
  Subspace s(g, a);
  Subspace c = complement(s);
  CHECK(c.dim() == 4);
  CHECK(c.exact());
  CHECK(intersect(s, c).dim() == 0);
  CHECK(span_sum(s, c).dim() == 6);
  Subspace sf(g, a.to_double());
  Subspace cf = complement(sf);
  CHECK(cf.dim() == 4);
  CHECK(intersect(sf, cf).dim() == 0);
  for (int i = 0; i < 4; ++i) CHECK(sf.coords(cf.basis().col(i)).norm() <= 1e-12);
}
