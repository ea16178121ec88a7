#include <doctest.h>

#include <random>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/octonion.hpp"
#include "orbitcheck/registry.hpp"

using namespace orbitcheck;

namespace {

Octonion unit(int a) {
  Octonion x;
  x[a] = 1;
  return x;
}

Octonion random_octonion(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Octonion x;
  for (auto& c : x) c = d(rng);
  return x;
}

Rational norm2(const Octonion& x) {
  Rational s = 0;
  for (const auto& c : x) s += c * c;
  return s;
}

}  // namespace

TEST_CASE("octonion table is a composition algebra") {
  // |xy|^2 = |x|^2 |y|^2 holds only for a consistent orientation of the Fano triples.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_octonion(rng);
    auto y = random_octonion(rng);
    CHECK(norm2(octonion_multiply(x, y)) == norm2(x) * norm2(y));
  }
  for (int a = 1; a < 8; ++a) {
    auto sq = octonion_multiply(unit(a), unit(a));
    CHECK(sq[0] == -1);
  }
}

TEST_CASE("g2 is the 14-dimensional derivation algebra") {
  auto basis = g2_derivation_basis();
  CHECK(basis.size() == 14);
  for (const auto& d : basis) CHECK(d.transpose() == d.scaled(-1));
  // Derivation identity on every pair of imaginary units.
  for (const auto& d : basis) {
    auto apply = [&](const Octonion& x) {
      Octonion out;
      for (const auto& [p, v] : d.entries()) out[p.first + 1] += v.re * x[p.second + 1];
      return out;
    };
    for (int a = 1; a < 8; ++a)
      for (int b = 1; b < 8; ++b) {
        auto lhs = apply(octonion_multiply(unit(a), unit(b)));
        auto r1 = octonion_multiply(apply(unit(a)), unit(b));
        auto r2 = octonion_multiply(unit(a), apply(unit(b)));
        for (int k = 0; k < 8; ++k) CHECK(lhs[k] == r1[k] + r2[k]);
      }
  }
  const auto& g2 = g2_algebra();
  CHECK(g2.algebra->dim() == 14);
  CHECK(validate_algebra(g2.algebra->tensor()).passed);
  CHECK(ad_invariant_exact(*g2.algebra));
}

TEST_CASE("spin(7) images are a homomorphism into so(8)") {
  auto imgs = spin7_images();
  CHECK(imgs.size() == 21);
  auto e = embedding_from_images(classical_algebra("so", 7), classical("so", 8), imgs, "spin7");
  auto rep = check_embedding(e);
  CHECK(rep.passed);
  CHECK(rep.exact_checked);
  CHECK(rep.index_misfit < 1e-12);
}

TEST_CASE("u(2) in so(4) has image dimension 4") {
  auto c = named_embedding("u(k)_in_so(2k)", {{"k", "2"}});
  CHECK(c.h_in_g.domain->dim() == 4);
  CHECK(c.h_in_g.codomain->dim() == 6);
  CHECK(image(c.h_in_g).dim() == 4);
  CHECK(check_embedding(c.h_in_g).passed);
}

TEST_CASE("diag_3 maps X to (X,X,X)") {
  auto c = named_embedding("diag_3(f)", {{"f", "so(3)"}});
  CHECK(c.h_in_g.codomain->dim() == 9);
  Vector x(3);
  x << 1, -2, 5;
  Vector y = c.h_in_g.matrix * x;
  CHECK(y.segment(0, 3) == x);
  CHECK(y.segment(3, 3) == x);
  CHECK(y.segment(6, 3) == x);
  auto rep = check_embedding(c.h_in_g);
  CHECK(rep.passed);
  CHECK(rep.index == doctest::Approx(3.0));
}

TEST_CASE("principal su(2) in sp(3)") {
  auto c = named_embedding("principal_su2_in_sp(3)");
  CHECK_FALSE(c.h_in_g.is_exact());
  CHECK(c.h_in_g.codomain->dim() == 21);
  CHECK(image(c.h_in_g).dim() == 3);
  auto rep = check_embedding(c.h_in_g);
  CHECK(rep.homomorphism_residual <= 1e-10);
  CHECK(rep.injective);
  CHECK(rep.index_misfit < 1e-10);
}

TEST_CASE("every registry entry is an injective homomorphism and chains commute") {
  for (const auto& info : embedding_registry()) {
    CAPTURE(info.name);
    Chain c = named_embedding(info.name);
    auto rep = check_embedding(c.h_in_g);
    CHECK(rep.passed);
    CHECK(rep.homomorphism_residual <= 1e-10);
    CHECK(c.h_in_g.is_exact() == info.exact);
    if (c.has_k()) {
      CHECK(check_embedding(*c.h_in_k).passed);
      CHECK(check_embedding(*c.k_in_g).passed);
      CHECK(chain_mismatch(c) <= 1e-12);
    }
    // Schur: -Killing of g pulls back to a multiple of -Killing on a simple domain.
    if (c.h_in_g.domain->dim() == 3 || info.name == "g2_in_so(7)_in_so(8)" || info.name == "spin7_in_so(8)_in_so(9)") {
      CHECK(rep.index > 0);
      CHECK(rep.index_misfit < 1e-10);
    }
  }
}

TEST_CASE("registry rejects bad input") {
  CHECK_THROWS_AS(named_embedding("no_such_thing"), InputError);
  CHECK_THROWS_AS(named_embedding("u(k)_in_so(2k)", {{"k", "x"}}), InputError);
  CHECK_THROWS_AS(named_embedding("u(k)_in_so(2k)", {{"q", "2"}}), InputError);
  CHECK_THROWS_AS(named_embedding("su(n)_in_u(n)_in_su(n+1)", {{"n", "40"}}), InputError);
}

TEST_CASE("a broken map is rejected") {
  auto so3 = classical_algebra("so", 3);
  QMatrix m = QMatrix::identity(3);
  m(0, 0) = 2;
  CHECK_THROWS_AS(make_embedding(so3, so3, m, "bad"), InvariantViolation);
}
