#pragma once

// Closed-form naturally reductive presentations.
//
// Case 4: g = l + k with h = diag(k) + k1 and the metric a<,>|m1 + b<,>|m2. The
// bi-invariant form alpha<,>_l + beta<,>_k induces it iff alpha = a and
// 4 alpha beta (alpha + beta) = (alpha + beta)^2 (a + b), i.e. beta = a(a+b)/(3a-b);
// at 3a = b the metric comes from l alone.
//
// Ledger-Obata F^3/diag(F): metrics on p1 = F + F + 0 given by f(x,y) = Ax^2 + 2Bxy + Cy^2.
// Degenerate cases B = 0, A + B = 0, B + C = 0 are normal for a subgroup F x F; otherwise
// alpha<,> + beta<,> + gamma<,> on the three factors induces f.

#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/exact.hpp"
#include "orbitcheck/reductive.hpp"

namespace orbitcheck {

struct Case4Result {
  bool l_normal = false;  // 3a = b
  double alpha = 0.0;
  double beta = 0.0;
  double beta_unscaled = 0.0;  // (a+b)/(3a-b); equals beta only when a = 1
  double identity_lhs = 0.0;  // 4 alpha beta (alpha + beta)
  double identity_rhs = 0.0;  // (alpha + beta)^2 (a + b)
};

Case4Result case4_natred(double a, double b);

struct Case4Exact {
  bool l_normal = false;
  Rational alpha;
  Rational beta;
  Rational beta_unscaled;
  Rational identity_lhs;
  Rational identity_rhs;
};

Case4Exact case4_natred(const Rational& a, const Rational& b);

struct LedgerObataMetric {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  double d() const { return a * c - b * b; }
};

struct BiInvariantTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

enum class LoBranch { generic, b_zero, a_plus_b_zero, b_plus_c_zero };
std::string to_string(LoBranch b);
/// The factor pattern of the subgroup F x F for a degenerate branch, e.g. "F x e x F".
std::string subgroup_pattern(LoBranch b);

struct LedgerObataSolution {
  LoBranch branch = LoBranch::generic;
  std::optional<BiInvariantTriple> triple;  // generic branch only
  std::string assignment;                   // which candidate ordering satisfied the system
  double system_residual = 0.0;             // max over the three displayed equations, relative
  double sum = 0.0;                         // alpha + beta + gamma
  double sum_formula = 0.0;                 // -D^2 / (B (A+B) (B+C))
};

/// Residuals of the three displayed equations for a candidate triple, relative to the term sizes.
std::vector<double> lo_system_residuals(const LedgerObataMetric& m, const BiInvariantTriple& t);

/// Throws InputError unless A > 0 and D > 0. `zero_tol` decides which branch applies.
LedgerObataSolution ledger_obata_solve(const LedgerObataMetric& m, double zero_tol = 1e-12);

struct LedgerObataExact {
  Rational alpha;
  Rational beta;
  Rational gamma;
  bool system_holds = false;
  Rational sum;
  Rational sum_formula;
};

/// Generic branch over the rationals; nullopt in a degenerate branch.
std::optional<LedgerObataExact> ledger_obata_solve_exact(const Rational& a, const Rational& b, const Rational& c);

/// Builds F^3, h = diag(F) and p = (alpha, beta, gamma)-orthocomplement of h; compares
/// (alpha a^2 + beta b^2 + gamma c^2)|Z|^2 with f(a - c, b - c)|Z|^2 for the pairs
/// (a, b) in {-1,0,1}^2 minus the origin and an orthonormal basis Z of F. Returns the
/// largest discrepancy relative to max(|A|, |B|, |C|).
double ledger_obata_verify(const AlgebraPtr& f, const LedgerObataMetric& m, const BiInvariantTriple& t);

/// The metric f (all branches) as an operator on the isotropy module m of F^3/diag(F),
/// in the orthonormal m-coordinates of `space` (built from diag_3).
Matrix ledger_obata_operator(const ReductiveSpace& space, const LedgerObataMetric& m);

}  // namespace orbitcheck
