// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orbitcheck/catalog.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/natred.hpp"
#include "orbitcheck/random.hpp"
#include "orbitcheck/registry.hpp"

using namespace orbitcheck;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome fail(const std::string& why) { return {false, why}; }

ReductiveSpace catalog_space(const std::string& id) { return catalog_instantiate(catalog_entry(id)); }

Vector random_in(const Subspace& s, Rng& rng) { return s.basis() * gaussian_vector(rng, s.dim()); }

// 1. Positive regression over five thm1.4 catalog spaces.
Outcome positive_go() {
  const double kMaxResidual = 1e-8;
  auto start = Clock::now();
  const std::vector<std::pair<double, double>> pairs{{1, 2}, {2, 1}, {1, 5}};
  double worst = 0.0;
  int runs = 0;
  for (const char* id : {"thm1.4-case3-k2", "thm1.4-case8-n1", "thm1.4-case6-m2n1", "thm1.4-case5", "thm1.4-case1"}) {
    ReductiveSpace s = catalog_space(id);
    std::vector<MetricOperator> metrics;
    for (auto [l, m] : pairs) metrics.push_back(two_param_metric(s, l, m));
    if (std::string(id) == "thm1.4-case1") {
      Matrix w(2, 2);
      w << 2, 0.7, 0.7, 1.5;
      metrics.push_back(block_metric(s, w));
      if (metrics.back().scalar()) return fail("block metric on so(8)/g2 is scalar");
    }
    for (const auto& a : metrics) {
      GoVerdict v = go_check(s, a, {100, 0});
      ++runs;
      if (v.status != GoStatus::go_consistent)
        return fail(std::string(id) + " " + to_string(a.form) + ": " + to_string(v.status));
      if (v.max_residual > kMaxResidual) return fail(std::string(id) + ": residual " + fmt("%.3g", v.max_residual));
      worst = std::max(worst, v.max_residual);
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs > 60.0) return fail("took " + fmt("%.1f", secs) + " s");
  return {true, std::to_string(runs) + " runs GO_CONSISTENT, max residual " + fmt("%.2g", worst) + ", " +
                    fmt("%.1f", secs) + " s"};
}

// 2. sp(3)/principal su(2).
Outcome negative_v10() {
  ReductiveSpace s = catalog_space("table1-V.10");
  FilterReport f = necessary_filter(s, 0);
  if (f.passed()) return fail("necessary filter passes");
  bool zero_stabilizer = false;
  for (const auto& c : f.conclusions) zero_stabilizer = zero_stabilizer || (!c.pass && c.rule.rfind("stabilizer", 0) == 0);
  if (!zero_stabilizer) return fail("filter fails for a reason other than a stabilizer dimension");
  GoVerdict v = go_check(s, two_param_metric(s, 1, 2), {100, 0});
  if (v.status != GoStatus::not_go || !v.counterexample) return fail("go_check says " + to_string(v.status));
  const GoWitness& w = *v.counterexample;
  if (w.rank_gap < 1) return fail("counterexample has no rank gap");
  if (w.margin < 1e3 * kDefaultTol) return fail("margin " + fmt("%.3g", w.margin) + " < 1e3 tol");
  return {true, "filter FAIL (chi1 = " + std::to_string(f.chi1.dim) + ", chi2 = " + std::to_string(f.chi2.dim) +
                    "), NOT_GO with rank gap " + std::to_string(w.rank_gap) + ", margin " + fmt("%.3g", w.margin)};
}

// 3. Ledger-Obata on F = so(3).
Outcome ledger_obata() {
  auto f = algebra_by_name("so(3)");
  Rng rng(2024);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double worst_verify = 0.0, worst_sum = 0.0;
  int n = 0;
  while (n < 1000) {
    double a = std::abs(u(rng)) + 0.1, b = u(rng), c = std::abs(u(rng)) + 0.1;
    double d = a * c - b * b;
    if (d <= 0.0 || std::min({std::abs(b), std::abs(a + b), std::abs(b + c)}) < 0.1) continue;
    LedgerObataMetric m{a, b, c};
    auto s = ledger_obata_solve(m);
    if (!s.triple) return fail("no triple for a generic metric");
    double r = ledger_obata_verify(f, m, *s.triple);
    double sum = s.triple->alpha + s.triple->beta + s.triple->gamma;
    double expect = -d * d / (b * (a + b) * (b + c));
    double sum_err = std::abs(sum - expect) / std::max(1.0, std::abs(expect));
    worst_verify = std::max(worst_verify, r);
    worst_sum = std::max(worst_sum, sum_err);
    ++n;
  }
  if (worst_verify > 1e-10) return fail("verify residual " + fmt("%.3g", worst_verify));
  if (worst_sum > 1e-12) return fail("sum mismatch " + fmt("%.3g", worst_sum));

  auto e = ledger_obata_solve_exact(3, 1, 2);
  if (!e || !e->system_holds) return fail("(3,1,2) does not satisfy the system exactly");
  if (e->alpha != Rational(5, 3) || e->beta != Rational(5, 4) || e->gamma != -5)
    return fail("(3,1,2) gives " + to_string(e->alpha) + ", " + to_string(e->beta) + ", " + to_string(e->gamma));
  // The three equations, evaluated here over Q.
  Rational al = e->alpha, be = e->beta, ga = e->gamma;
  Rational ag = al + ga;
  bool eq1 = al * ga * ag == 3 * ag * ag + 2 * ag * al + 2 * al * al;
  bool sum_ok = al + be + ga == Rational(-25, 12);
  if (!eq1 || !sum_ok) return fail("(3,1,2) fails the direct rational check");
  return {true, "1000 cases, verify <= " + fmt("%.2g", worst_verify) + ", sum error <= " + fmt("%.2g", worst_sum) +
                    ", (3,1,2) -> (5/3, 5/4, -5) exact"};
}

// 4. The two-module case with [m1, m2] in m1.
Outcome case4() {
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  double worst = 0.0;
  int n = 0;
  while (n < 1000) {
    double a = u(rng), b = u(rng);
    if (std::abs(3 * a - b) < 0.1) continue;
    auto r = case4_natred(a, b);
    if (r.l_normal) return fail("generic input routed to the L-normal branch");
    double al = r.alpha, be = r.beta;
    double lhs = 4 * al * be * (al + be), rhs = (al + be) * (al + be) * (a + b);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    ++n;
  }
  if (worst > 1e-12) return fail("identity residual " + fmt("%.3g", worst));
  if (!case4_natred(1.0, 3.0).l_normal) return fail("(1,3) is not L-normal");
  return {true, "1000 cases, identity residual <= " + fmt("%.2g", worst) + ", (1,3) L-normal"};
}

// 5. Structure classifier.
Outcome classifier() {
  std::vector<std::pair<std::string, int>> cases{{"prop1.2-case1", 1}, {"prop1.2-case2", 2}, {"prop1.2-case3", 3},
                                                 {"prop1.2-case4", 4}, {"prop1.2-case5", 5}, {"prop1.2-case6", 6},
                                                 {"thm1.4-case3-k2", 7}, {"table1-V.10", 7}};
  for (const auto& [id, want] : cases) {
    const auto& e = catalog_entry(id);
    int got = classify_structure(named_embedding(e.chain, e.params).h_in_g).case_label;
    if (got != want) return fail(id + ": case " + std::to_string(got) + ", expected " + std::to_string(want));
  }
  return {true, std::to_string(cases.size()) + " examples, cases 1-7"};
}

// 6. Geodesic graph against its Z_X, Z_Y decomposition on so(5)/u(2).
Outcome reconstruction() {
  ReductiveSpace s = catalog_space("thm1.4-case3-k2");
  const std::vector<std::pair<double, double>> lm{{1, 2}, {2, 1}, {1, 5}, {3, 1}, {1, 0.5},
                                                  {0.3, 1}, {2, 3}, {5, 2}, {1.5, 0.7}, {4, 9}};
  Rng rng(99);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vector x = random_in(s.parts[0], rng);
    Vector y = random_in(s.parts[1], rng);
    ZxZy d = zxzy_decompose(s, x, y);
    if (d.status != WitnessStatus::solved) return fail("zxzy_decompose failed on pair " + std::to_string(i));
    for (auto [l, m] : lm) {
      GraphResult g = geodesic_graph(s, l, m, x, y);
      if (g.status != WitnessStatus::solved) return fail("geodesic_graph failed on pair " + std::to_string(i));
      Vector z = ((l - m) / m) * d.zx + ((l - m) / l) * d.zy;
      worst = std::max(worst, (z - g.z).norm() / std::max(1.0, g.z.norm()));
    }
  }
  if (worst > 1e-8) return fail("reconstruction gap " + fmt("%.3g", worst));
  return {true, "500 (X,Y,lambda,mu) cases, gap <= " + fmt("%.2g", worst)};
}

// 7. Consequences of GO on every space the engine finds consistent.
Outcome consequences() {
  int spaces = 0, violations = 0;
  std::string where;
  for (const auto& e : catalog()) {
    if (!e.constructible) continue;
    ReductiveSpace s = catalog_instantiate(e);
    if (!s.has_parts()) continue;
    GoVerdict v = go_check(s, two_param_metric(s, 1, 2), {30, 0});
    if (v.status != GoStatus::go_consistent) continue;
    ConsequenceReport r = check_consequences(s, 200, 0);
    ++spaces;
    if (r.violations() > 0 && where.empty()) where = e.id;
    violations += r.violations();
  }
  if (violations > 0) return fail(std::to_string(violations) + " violations, first on " + where);
  return {true, std::to_string(spaces) + " GO_CONSISTENT spaces x 200 pairs, 0 violations"};
}

// 8. Identities on zoo outputs and the metric-space dimensions of the thm1.4 entries.
Outcome invariants() {
  const double kTol = 1e-12;
  double worst = 0.0;
  std::string where;
  auto track = [&](double r, const std::string& what) {
    if (r > worst) {
      worst = r;
      where = what;
    }
  };
  std::vector<std::string> algebras{"g2"};
  for (int n = 2; n <= 6; ++n)
    for (const char* fam : {"so", "su", "sp", "u"}) algebras.push_back(std::string(fam) + "(" + std::to_string(n) + ")");
  for (const auto& name : algebras) {
    auto g = algebra_by_name(name);
    track(validate_algebra(g->tensor()).max_jacobi, name + " jacobi");
    track(ad_invariance_residual(*g), name + " ad-invariance");
  }
  for (const auto& info : embedding_registry()) {
    Chain c = named_embedding(info.name, info.defaults);
    track(check_embedding(c.h_in_g).homomorphism_residual, info.name + " homomorphism");
    track(chain_mismatch(c), info.name + " chain");
    ReductiveSpace s;
    try {
      s = space_from_chain(c);
    } catch (const InputError&) {
      continue;  // not an effective pair on its own
    }
    track(s.module_residual, info.name + " module equivariance");
    if (s.has_parts()) track(two_param_metric(s, 1, 3).equivariance_residual, info.name + " metric equivariance");
  }
  if (worst > kTol) return fail(where + " residual " + fmt("%.3g", worst));
  int entries = 0;
  for (const auto& e : catalog_list(parse_filter("source=thm1.4,constructible=true"))) {
    int want = e.id == "thm1.4-case1" ? 3 : 2;
    int got = catalog_instantiate(e).metric_space_dim;
    if (got != want) return fail(e.id + ": metric space dim " + std::to_string(got));
    ++entries;
  }
  return {true, "max residual " + fmt("%.2g", worst) + "; metric space dim 2 on " + std::to_string(entries - 1) +
                    " entries, 3 on so(8)/g2"};
}

// 9. A sphere grid on su(3)/su(2).
Outcome sphere_grid() {
  ReductiveSpace s = catalog_space("thm1.4-case6-m2n1");
  const int dim = s.m.dim();
  if (dim != 5) return fail("m has dim " + std::to_string(dim));
  MetricOperator a = two_param_metric(s, 1, 2);
  // Hyperspherical angles: three polar angles in (0, pi) and one azimuth in [0, 2 pi).
  const int kPolar = 6, kAzimuth = 8;
  int points = 0, solved = 0;
  double worst = 0.0;
  for (int i = 0; i < kPolar; ++i)
    for (int j = 0; j < kPolar; ++j)
      for (int k = 0; k < kPolar; ++k)
        for (int l = 0; l < kAzimuth; ++l) {
          double t1 = M_PI * (i + 0.5) / kPolar, t2 = M_PI * (j + 0.5) / kPolar, t3 = M_PI * (k + 0.5) / kPolar;
          double p = 2 * M_PI * l / kAzimuth;
          Vector c(5);
          c << std::cos(t1), std::sin(t1) * std::cos(t2), std::sin(t1) * std::sin(t2) * std::cos(t3),
              std::sin(t1) * std::sin(t2) * std::sin(t3) * std::cos(p),
              std::sin(t1) * std::sin(t2) * std::sin(t3) * std::sin(p);
          GoWitness w = go_witness_general(s, a, s.m.basis() * c);
          ++points;
          if (w.status == WitnessStatus::solved) ++solved;
          worst = std::max(worst, w.residual);
        }
  GoVerdict v = go_check(s, a, {100, 0});
  if (solved != points) return fail(std::to_string(points - solved) + " of " + std::to_string(points) + " unsolved");
  if (v.status != GoStatus::go_consistent) return fail("go_check says " + to_string(v.status));
  return {true, std::to_string(points) + " grid points solvable, max residual " + fmt("%.2g", worst) +
                    ", go_check GO_CONSISTENT"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"positive GO regression", positive_go},
      {"negative regression sp(3)/principal su(2)", negative_v10},
      {"Ledger-Obata weights", ledger_obata},
      {"case 4 naturally reductive identity", case4},
      {"structure classifier", classifier},
      {"geodesic graph reconstruction", reconstruction},
      {"GO consequences", consequences},
      {"invariant residuals", invariants},
      {"sphere grid oracle su(3)/su(2)", sphere_grid},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
