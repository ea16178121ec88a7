#include "orbitcheck/natred.hpp"

#include <algorithm>
#include <cmath>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/registry.hpp"

namespace orbitcheck {

Case4Result case4_natred(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw InputError("case4: a and b must be positive");
  Case4Result r;
  r.alpha = a;
  if (3 * a == b) {
    r.l_normal = true;
    return r;
  }
  r.beta = a * (a + b) / (3 * a - b);
  r.beta_unscaled = (a + b) / (3 * a - b);
  const double s = r.alpha + r.beta;
  r.identity_lhs = 4 * r.alpha * r.beta * s;
  r.identity_rhs = s * s * (a + b);
  return r;
}

Case4Exact case4_natred(const Rational& a, const Rational& b) {
  if (a <= 0 || b <= 0) throw InputError("case4: a and b must be positive");
  Case4Exact r;
  r.alpha = a;
  if (3 * a == b) {
    r.l_normal = true;
    return r;
  }
  r.beta = a * (a + b) / (3 * a - b);
  r.beta_unscaled = (a + b) / (3 * a - b);
  Rational s = r.alpha + r.beta;
  r.identity_lhs = 4 * r.alpha * r.beta * s;
  r.identity_rhs = s * s * (a + b);
  return r;
}

std::string to_string(LoBranch b) {
  switch (b) {
    case LoBranch::generic: return "generic";
    case LoBranch::b_zero: return "B=0";
    case LoBranch::a_plus_b_zero: return "A+B=0";
    case LoBranch::b_plus_c_zero: return "B+C=0";
  }
  return "?";
}

std::string subgroup_pattern(LoBranch b) {
  switch (b) {
    case LoBranch::generic: return "F x F x F";
    case LoBranch::b_zero: return "F x F x e";
    case LoBranch::a_plus_b_zero: return "F x e x F";
    case LoBranch::b_plus_c_zero: return "e x F x F";
  }
  return "?";
}

namespace {

template <typename T>
struct Sides {
  T lhs[3];
  T rhs[3];
  T scale[3];
};

template <typename T>
T absval(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <typename T>
Sides<T> system_sides(const T& A, const T& B, const T& C, const T& al, const T& be, const T& ga) {
  Sides<T> s;
  const T ag = al + ga;
  const T bg = be + ga;
  s.lhs[0] = al * ga * ag;
  T r0[3] = {A * ag * ag, 2 * B * ag * al, C * al * al};
  s.lhs[1] = be * ga * bg;
  T r1[3] = {A * be * be, 2 * B * be * bg, C * bg * bg};
  s.lhs[2] = al * be * ga;
  T r2[3] = {A * be * ag, B * (ag * bg + al * be), C * al * bg};
  T* rs[3] = {r0, r1, r2};
  for (int e = 0; e < 3; ++e) {
    s.rhs[e] = rs[e][0] + rs[e][1] + rs[e][2];
    T m = absval(s.lhs[e]);
    for (int k = 0; k < 3; ++k) m = std::max(m, absval(rs[e][k]));
    s.scale[e] = m;
  }
  return s;
}

struct Candidate {
  const char* name;
  int order[3];  // indices into {D/(B+C), D/(A+B), -D/B}
};

// The closed form lists D/(B+C), -D/B, D/(A+B); both placements of the last two are tried.
constexpr Candidate kCandidates[] = {{"(D/(B+C), D/(A+B), -D/B)", {0, 1, 2}},
                                     {"(D/(B+C), -D/B, D/(A+B))", {0, 2, 1}}};

}  // namespace

std::vector<double> lo_system_residuals(const LedgerObataMetric& m, const BiInvariantTriple& t) {
  auto s = system_sides<double>(m.a, m.b, m.c, t.alpha, t.beta, t.gamma);
  std::vector<double> out;
  for (int e = 0; e < 3; ++e) out.push_back(std::abs(s.lhs[e] - s.rhs[e]) / std::max(s.scale[e], 1e-300));
  return out;
}

LedgerObataSolution ledger_obata_solve(const LedgerObataMetric& m, double zero_tol) {
  if (!(m.a > 0) || !(m.d() > 0)) throw InputError("Ledger-Obata metric is not positive definite (need A > 0, AC - B^2 > 0)");
  LedgerObataSolution sol;
  const double size = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c)});
  if (std::abs(m.b) <= zero_tol * size) {
    sol.branch = LoBranch::b_zero;
    return sol;
  }
  if (std::abs(m.a + m.b) <= zero_tol * size) {
    sol.branch = LoBranch::a_plus_b_zero;
    return sol;
  }
  if (std::abs(m.b + m.c) <= zero_tol * size) {
    sol.branch = LoBranch::b_plus_c_zero;
    return sol;
  }
  const double d = m.d();
  const double base[3] = {d / (m.b + m.c), d / (m.a + m.b), -d / m.b};
  double best = INFINITY;
  for (const auto& cand : kCandidates) {
    BiInvariantTriple t{base[cand.order[0]], base[cand.order[1]], base[cand.order[2]]};
    auto res = lo_system_residuals(m, t);
    double worst = *std::max_element(res.begin(), res.end());
    if (worst < best) {
      best = worst;
      sol.triple = t;
      sol.assignment = cand.name;
    }
  }
  sol.system_residual = best;
  if (!(best <= 1e-10))
    throw InvariantViolation("no ordering of the closed-form weights satisfies the Ledger-Obata system (residual " +
                             std::to_string(best) + ")");
  sol.sum = sol.triple->alpha + sol.triple->beta + sol.triple->gamma;
  sol.sum_formula = -d * d / (m.b * (m.a + m.b) * (m.b + m.c));
  return sol;
}

std::optional<LedgerObataExact> ledger_obata_solve_exact(const Rational& a, const Rational& b, const Rational& c) {
  Rational d = a * c - b * b;
  if (a <= 0 || d <= 0) throw InputError("Ledger-Obata metric is not positive definite (need A > 0, AC - B^2 > 0)");
  if (b == 0 || a + b == 0 || b + c == 0) return std::nullopt;
  const Rational base[3] = {d / (b + c), d / (a + b), -d / b};
  LedgerObataExact out;
  bool found = false;
  for (const auto& cand : kCandidates) {
    Rational al = base[cand.order[0]];
    Rational be = base[cand.order[1]];
    Rational ga = base[cand.order[2]];
    auto s = system_sides<Rational>(a, b, c, al, be, ga);
    bool holds = s.lhs[0] == s.rhs[0] && s.lhs[1] == s.rhs[1] && s.lhs[2] == s.rhs[2];
    if (holds && !found) {
      out.alpha = al;
      out.beta = be;
      out.gamma = ga;
      out.system_holds = true;
      found = true;
    }
  }
  if (!found) {
    out.alpha = base[0];
    out.beta = base[1];
    out.gamma = base[2];
  }
  out.sum = out.alpha + out.beta + out.gamma;
  out.sum_formula = -d * d / (b * (a + b) * (b + c));
  return out;
}

double ledger_obata_verify(const AlgebraPtr& f, const LedgerObataMetric& m, const BiInvariantTriple& t) {
  if (t.alpha + t.beta + t.gamma == 0.0) throw InputError("alpha + beta + gamma = 0: h has no complement");
  if (t.gamma == 0.0) throw InputError("gamma must be nonzero");
  Chain chain = named_embedding("diag_3(f)", {{"f", f->name()}});
  const Embedding& e = chain.h_in_g;
  const LieAlgebra& g = *e.codomain;
  const int n = f->dim();
  if (g.dim() != 3 * n) throw InvariantViolation("diag_3 codomain has the wrong dimension");
  Matrix q1 = Matrix::Zero(3 * n, 3 * n);
  const double w[3] = {t.alpha, t.beta, t.gamma};
  for (int k = 0; k < 3; ++k) q1.block(k * n, k * n, n, n) = w[k] * g.inner().block(k * n, k * n, n, n);
  const Matrix& qf = e.domain->inner();
  Matrix zb = whole(e.domain).basis();  // orthonormal for <,>_F
  const double size = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c)});
  double worst = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      if (a == 0 && b == 0) continue;
      const double c = -(a * t.alpha + b * t.beta) / t.gamma;
      for (int k = 0; k < n; ++k) {
        Vector z = zb.col(k);
        Vector v(3 * n);
        v << a * z, b * z, c * z;
        // v is orthogonal to h for (,)_1.
        for (int i = 0; i < e.matrix.cols(); ++i)
          worst = std::max(worst, std::abs(v.dot(q1 * e.matrix.col(i))) / size);
        const double lhs = v.dot(q1 * v);
        // Project along h onto F + F + 0.
        Vector p = v - c * (e.matrix * z);
        worst = std::max(worst, p.tail(n).norm() / size);
        Vector p1 = p.head(n);
        Vector p2 = p.segment(n, n);
        const double rhs = m.a * p1.dot(qf * p1) + 2 * m.b * p1.dot(qf * p2) + m.c * p2.dot(qf * p2);
        worst = std::max(worst, std::abs(lhs - rhs) / size);
      }
    }
  return worst;
}

Matrix ledger_obata_operator(const ReductiveSpace& space, const LedgerObataMetric& m) {
  const LieAlgebra& g = *space.g;
  if (g.dim() % 3 != 0) throw InputError("Ledger-Obata operator needs g = F + F + F");
  const int n = g.dim() / 3;
  const Matrix& mb = space.m.basis();
  Matrix p(2 * n, mb.cols());
  p << mb.topRows(n) - mb.bottomRows(n), mb.middleRows(n, n) - mb.bottomRows(n);
  const Matrix qf = g.inner().topLeftCorner(n, n);
  Matrix form(2 * n, 2 * n);
  form << m.a * qf, m.b * qf, m.b * qf, m.c * qf;
  Matrix op = p.transpose() * form * p;
  return (op + op.transpose()) / 2;
}

}  // namespace orbitcheck
