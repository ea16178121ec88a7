#include <doctest.h>

#include <cmath>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/go_engine.hpp"
#include "orbitcheck/natred.hpp"
#include "orbitcheck/random.hpp"
#include "orbitcheck/registry.hpp"

using namespace orbitcheck;

namespace {

// Forward map: the metric on p1 induced by alpha, beta, gamma, worked out from the
// orthocomplement of diag(F): A = alpha(beta+gamma)/S, B = -alpha beta/S, C = beta(alpha+gamma)/S.
LedgerObataMetric induced_metric(double al, double be, double ga) {
  const double s = al + be + ga;
  return {al * (be + ga) / s, -al * be / s, be * (al + ga) / s};
}

}  // namespace

TEST_CASE("case 4: closed form and the L-normal branch") {
  auto r = case4_natred(1.0, 2.0);
  CHECK_FALSE(r.l_normal);
  CHECK(r.alpha == 1.0);
  CHECK(r.beta == doctest::Approx(3.0));
  CHECK(r.identity_lhs == doctest::Approx(48.0));
  CHECK(r.identity_rhs == doctest::Approx(48.0));
  CHECK(case4_natred(1.0, 3.0).l_normal);
  CHECK(case4_natred(1.0, 1.0).beta == doctest::Approx(1.0));
  CHECK_THROWS_AS(case4_natred(0.0, 1.0), InputError);

  auto q = case4_natred(Rational(1), Rational(2));
  CHECK(q.beta == 3);
  CHECK(q.identity_lhs == 48);
  CHECK(q.identity_rhs == 48);
  CHECK(case4_natred(Rational(2), Rational(6)).l_normal);

  // With a != 1 the weight carries a factor a: (2, 1) gives beta = 6/5, not 3/5.
  auto w = case4_natred(Rational(2), Rational(1));
  CHECK(w.beta == Rational(6, 5));
  CHECK(w.beta_unscaled == Rational(3, 5));
  CHECK(w.identity_lhs == w.identity_rhs);
}

TEST_CASE("case 4: identity holds on random inputs") {
  Rng rng(41);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  int checked = 0;
  while (checked < 1000) {
    double a = u(rng), b = u(rng);
    if (std::abs(3 * a - b) < 0.1) continue;
    auto r = case4_natred(a, b);
    double scale = std::max({std::abs(r.identity_lhs), std::abs(r.identity_rhs), 1.0});
    CHECK(std::abs(r.identity_lhs - r.identity_rhs) <= 1e-12 * scale);
    ++checked;
  }
}

TEST_CASE("Ledger-Obata: (3,1,2) exactly") {
  auto e = ledger_obata_solve_exact(3, 1, 2);
  REQUIRE(e);
  CHECK(e->system_holds);
  CHECK(e->alpha == Rational(5, 3));
  CHECK(e->beta == Rational(5, 4));
  CHECK(e->gamma == -5);
  CHECK(e->sum == Rational(-25, 12));
  CHECK(e->sum == e->sum_formula);
  // First equation: both sides equal 250/9.
  Rational ag = e->alpha + e->gamma;
  CHECK(e->alpha * e->gamma * ag == Rational(250, 9));
  CHECK(3 * ag * ag + 2 * ag * e->alpha + 2 * e->alpha * e->alpha == Rational(250, 9));

  auto s = ledger_obata_solve({3, 1, 2});
  CHECK(s.branch == LoBranch::generic);
  REQUIRE(s.triple);
  CHECK(s.triple->alpha == doctest::Approx(5.0 / 3));
  CHECK(s.triple->beta == doctest::Approx(5.0 / 4));
  CHECK(s.triple->gamma == doctest::Approx(-5.0));
  CHECK(s.assignment == "(D/(B+C), D/(A+B), -D/B)");
}

TEST_CASE("Ledger-Obata: the other ordering fails the system") {
  // Swapping the last two weights of the (3,1,2) solution breaks the first equation.
  auto res = lo_system_residuals({3, 1, 2}, {5.0 / 3, -5.0, 5.0 / 4});
  CHECK(*std::max_element(res.begin(), res.end()) > 1e-2);
}

TEST_CASE("Ledger-Obata: degenerate branches") {
  auto s = ledger_obata_solve({1, 0, 1});
  CHECK(s.branch == LoBranch::b_zero);
  CHECK_FALSE(s.triple);
  CHECK(subgroup_pattern(s.branch) == "F x F x e");
  CHECK(ledger_obata_solve({2, -2, 3}).branch == LoBranch::a_plus_b_zero);
  CHECK(subgroup_pattern(LoBranch::a_plus_b_zero) == "F x e x F");
  CHECK(ledger_obata_solve({3, -2, 2}).branch == LoBranch::b_plus_c_zero);
  CHECK(subgroup_pattern(LoBranch::b_plus_c_zero) == "e x F x F");
  CHECK_FALSE(ledger_obata_solve_exact(1, 0, 1));
  CHECK_THROWS_AS(ledger_obata_solve({1, 2, 1}), InputError);
  CHECK_THROWS_AS(ledger_obata_solve({-1, 0, -1}), InputError);
}

TEST_CASE("Ledger-Obata: random metrics round-trip through the induced form") {
  Rng rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int checked = 0;
  while (checked < 1000) {
    LedgerObataMetric m{std::abs(u(rng)) + 0.1, u(rng), std::abs(u(rng)) + 0.1};
    if (m.d() <= 0.1) continue;
    if (std::min({std::abs(m.b), std::abs(m.a + m.b), std::abs(m.b + m.c)}) < 0.1) continue;
    auto s = ledger_obata_solve(m);
    REQUIRE(s.triple);
    CHECK(s.system_residual <= 1e-10);
    CHECK(std::abs(s.sum - s.sum_formula) <= 1e-12 * std::max(1.0, std::abs(s.sum)));
    auto back = induced_metric(s.triple->alpha, s.triple->beta, s.triple->gamma);
    const double size = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c)});
    CHECK(std::abs(back.a - m.a) <= 1e-9 * size);
    CHECK(std::abs(back.b - m.b) <= 1e-9 * size);
    CHECK(std::abs(back.c - m.c) <= 1e-9 * size);
    ++checked;
  }
}

TEST_CASE("Ledger-Obata: the triple induces f on so(3)^3/diag") {
  auto f = algebra_by_name("so(3)");
  for (LedgerObataMetric m : {LedgerObataMetric{3, 1, 2}, LedgerObataMetric{2, -0.5, 1}, LedgerObataMetric{1, 0.3, 4}}) {
    auto s = ledger_obata_solve(m);
    REQUIRE(s.triple);
    CHECK(ledger_obata_verify(f, m, *s.triple) <= 1e-10);
  }
  // A wrong triple is caught by the geometric check.
  CHECK(ledger_obata_verify(f, {3, 1, 2}, {5.0 / 3, -5.0, 5.0 / 4}) > 1e-3);
}

TEST_CASE("Ledger-Obata metrics are geodesic orbit") {
  auto sp = space_from_chain(named_embedding("diag_3(f)", {{"f", "so(3)"}}));
  REQUIRE(sp.m.dim() == 6);
  for (LedgerObataMetric m : {LedgerObataMetric{3, 1, 2}, LedgerObataMetric{1, 0, 1}, LedgerObataMetric{2, -0.5, 1}}) {
    auto a = metric_from_matrix(sp, ledger_obata_operator(sp, m));
    auto v = go_check(sp, a, {40, 2});
    CHECK(v.consistent_with_go());
    CHECK(v.max_residual <= 1e-8);
  }
}
