#include "orbitcheck/go_engine.hpp"

#include <cmath>
#include <numbers>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/random.hpp"

namespace orbitcheck {

namespace {

// Coordinates of a subspace's basis inside the orthonormal coordinates of m.
Matrix in_m(const ReductiveSpace& sp, const Subspace& s) { return sp.m.basis().transpose() * sp.g->inner() * s.basis(); }

void require_parts(const ReductiveSpace& sp, const char* what) {
  if (!sp.decomposed) throw InputError(std::string(what) + ": space is not decomposed");
  if (!sp.has_parts()) throw InputError(std::string(what) + ": space has no two-part splitting of m");
}

double max_op_norm(const std::vector<Matrix>& ops) {
  double s = 0.0;
  for (const auto& r : ops) s = std::max(s, r.norm());
  return s;
}

double equivariance(const ReductiveSpace& sp, const Matrix& a) {
  auto ops = isotropy_ops(sp.h, sp.m);
  const double scale = max_op_norm(ops) * std::max(a.norm(), 1e-300);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& r : ops) worst = std::max(worst, (a * r - r * a).norm());
  return worst / scale;
}

}  // namespace

bool MetricOperator::scalar(double tol) const {
  if (matrix.size() == 0) return true;
  const double t = matrix.trace() / static_cast<double>(matrix.rows());
  Matrix d = matrix - t * Matrix::Identity(matrix.rows(), matrix.cols());
  return d.norm() <= tol * std::max(1.0, matrix.norm());
}

std::string to_string(MetricOperator::Form f) {
  switch (f) {
    case MetricOperator::Form::two_param: return "two_param";
    case MetricOperator::Form::block: return "block";
    case MetricOperator::Form::general: return "general";
  }
  return "?";
}

MetricOperator two_param_metric(const ReductiveSpace& sp, double lambda, double mu) {
  require_parts(sp, "two_param_metric");
  if (!(lambda > 0) || !(mu > 0)) throw InputError("two_param_metric: lambda and mu must be positive");
  MetricOperator a;
  a.form = MetricOperator::Form::two_param;
  a.lambda = lambda;
  a.mu = mu;
  Matrix c0 = in_m(sp, sp.parts[0]);
  Matrix c1 = in_m(sp, sp.parts[1]);
  a.matrix = lambda * c0 * c0.transpose() + mu * c1 * c1.transpose();
  a.equivariance_residual = equivariance(sp, a.matrix);
  return a;
}

std::optional<Matrix> module_intertwiner(const ReductiveSpace& sp, int i, int j) {
  const Subspace& mi = sp.modules.at(static_cast<size_t>(i));
  const Subspace& mj = sp.modules.at(static_cast<size_t>(j));
  const int di = mi.dim();
  const int dj = mj.dim();
  auto ri = isotropy_ops(sp.h, mi);
  auto rj = isotropy_ops(sp.h, mj);
  // R_i T - T R_j = 0, with vec(T) column-major: (I (x) R_i - R_j^T (x) I) vec T.
  Matrix sys(static_cast<Eigen::Index>(ri.size()) * di * dj, di * dj);
  sys.setZero();
  for (size_t a = 0; a < ri.size(); ++a) {
    Eigen::Index off = static_cast<Eigen::Index>(a) * di * dj;
    for (int c = 0; c < dj; ++c) {
      sys.block(off + c * di, c * di, di, di) += ri[a];
      for (int r = 0; r < dj; ++r) sys.block(off + r * di, c * di, di, di) -= rj[a](c, r) * Matrix::Identity(di, di);
    }
  }
  const double s = std::max(1.0, sys.norm());
  Matrix k = nullspace(sys / s, 1e-9);
  if (k.cols() != 1) return std::nullopt;
  Matrix t = Eigen::Map<const Matrix>(k.col(0).data(), di, dj);
  Matrix tt = t.transpose() * t;
  const double c = tt.trace() / dj;
  if (c <= 0 || (tt - c * Matrix::Identity(dj, dj)).norm() > 1e-8 * c) return std::nullopt;
  return Matrix(t / std::sqrt(c));
}

MetricOperator block_metric(const ReductiveSpace& sp, const Matrix& w) {
  if (!sp.decomposed || !sp.isotypic_pair()) throw InputError("block_metric needs two isomorphic modules");
  if (w.rows() != 2 || w.cols() != 2 || std::abs(w(0, 1) - w(1, 0)) > 1e-12 * w.norm())
    throw InputError("block_metric: weights must be a symmetric 2x2 matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  if (!(es.eigenvalues().minCoeff() > 0)) throw InputError("block_metric: weights are not positive definite");
  auto t = module_intertwiner(sp, 0, 1);
  if (!t) throw InputError("block_metric: the modules do not have a unique equivariant isometry");
  MetricOperator a;
  a.form = MetricOperator::Form::block;
  a.weights = w;
  Matrix c0 = in_m(sp, sp.modules[0]);
  Matrix c1 = in_m(sp, sp.modules[1]);
  Matrix cross = c0 * *t * c1.transpose();
  a.matrix = w(0, 0) * c0 * c0.transpose() + w(1, 1) * c1 * c1.transpose() + w(0, 1) * (cross + cross.transpose());
  a.equivariance_residual = equivariance(sp, a.matrix);
  if (sp.parts.size() == 2 && sp.part_of == std::vector<int>{0, 1}) {
    a.lambda = w(0, 0);
    a.mu = w(1, 1);
  }
  return a;
}

MetricOperator metric_from_matrix(const ReductiveSpace& sp, const Matrix& m, double tol) {
  const int d = sp.m.dim();
  if (m.rows() != d || m.cols() != d) throw InputError("metric operator must be " + std::to_string(d) + "x" + std::to_string(d));
  if ((m - m.transpose()).norm() > tol * std::max(1.0, m.norm())) throw InputError("metric operator is not symmetric");
  Matrix sym = (m + m.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (d > 0 && !(es.eigenvalues().minCoeff() > 0)) throw InputError("metric operator is not positive definite");
  MetricOperator a;
  a.form = MetricOperator::Form::general;
  a.matrix = sym;
  a.equivariance_residual = equivariance(sp, sym);
  if (a.equivariance_residual > tol)
    throw InvariantViolation("metric operator does not commute with ad(h) (residual " +
                             std::to_string(a.equivariance_residual) + ")");
  return a;
}

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::solved: return "solved";
    case WitnessStatus::unsolvable: return "unsolvable";
    case WitnessStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(GoStatus s) {
  switch (s) {
    case GoStatus::go_consistent: return "GO_CONSISTENT";
    case GoStatus::not_go: return "NOT_GO";
    case GoStatus::normal_trivial: return "NORMAL_TRIVIAL";
    case GoStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

GoWitness go_witness_general(const ReductiveSpace& sp, const MetricOperator& a, const Vector& x, double tol) {
  const LieAlgebra& g = *sp.g;
  const Matrix& mb = sp.m.basis();
  const Matrix& hb = sp.h.basis();
  if (x.size() != g.dim()) throw InputError("vector length differs from dim g");
  if (a.matrix.rows() != sp.m.dim()) throw InputError("metric operator does not match this space");
  GoWitness w;
  w.x = x;
  w.z = Vector::Zero(g.dim());
  const double xn = g.norm(x);
  if (sp.m.distance(x) > 1e-8 * std::max(1.0, xn)) throw InputError("vector is not in m");
  // A = c Id: [X, cX] = 0, so Z = 0 without solving.
  if (a.scalar()) return w;
  Vector xm = sp.m.coords(x);
  Vector axm = a.matrix * xm;
  const double scale = xm.norm() * axm.norm();
  if (scale == 0.0) return w;
  Vector ax = mb * axm;
  Matrix l(sp.m.dim(), sp.h.dim());
  for (int i = 0; i < sp.h.dim(); ++i) l.col(i) = sp.m.coords(g.bracket(Vector(hb.col(i)), ax));
  Vector b = -sp.m.coords(g.bracket(x, ax));
  LeastSquares ls = min_norm_solve(l / scale, b / scale);
  w.z = hb * ls.x;
  w.residual = ls.residual;
  w.margin = ls.residual;
  w.rank = ls.rank;
  w.augmented_rank = ls.augmented_rank;
  w.rank_gap = ls.augmented_rank - ls.rank;
  if (w.residual <= tol)
    w.status = WitnessStatus::solved;
  else if (w.rank_gap >= 1 && w.margin >= 1e3 * tol)
    w.status = WitnessStatus::unsolvable;
  else
    w.status = WitnessStatus::inconclusive;
  return w;
}

GoWitness go_witness_exact(const ReductiveSpace& sp, const Rational& lambda, const Rational& mu, const QVector& xc) {
  require_parts(sp, "go_witness_exact");
  const LieAlgebra& g = *sp.g;
  if (!sp.exact() || !sp.parts[0].exact() || !sp.parts[1].exact() || !g.exact() || !g.exact_inner())
    throw InputError("exact mode needs rational structure constants and exact isotropy parts");
  if (lambda <= 0 || mu <= 0) throw InputError("lambda and mu must be positive");
  const QMatrix& mx = *sp.m.exact_basis();
  const QMatrix& hx = *sp.h.exact_basis();
  if (static_cast<int>(xc.size()) != mx.cols()) throw InputError("coordinate vector length differs from dim m");
  QVector x = mx * xc;
  // Split x along the two parts.
  QMatrix both = sp.parts[0].exact_basis()->hcat(*sp.parts[1].exact_basis());
  auto c = exact_solve(both, x);
  if (!c) throw InvariantViolation("parts do not span m");
  const int d0 = sp.parts[0].dim();
  QVector c0(c->begin(), c->begin() + d0);
  QVector c1(c->begin() + d0, c->end());
  QVector ax = lambda * (*sp.parts[0].exact_basis() * c0) + mu * (*sp.parts[1].exact_basis() * c1);
  QMatrix proj = mx.transpose() * *g.exact_inner();
  QMatrix l(mx.cols(), hx.cols());
  for (int i = 0; i < hx.cols(); ++i) l.set_column(i, proj * g.bracket(hx.column(i), ax));
  QVector b = Rational(-1) * (proj * g.bracket(x, ax));

  GoWitness w;
  w.exact = true;
  w.x = to_double(x);
  w.z = Vector::Zero(g.dim());
  w.rank = exact_rank(l);
  QMatrix aug(l.rows(), l.cols() + 1);
  for (int r = 0; r < l.rows(); ++r) {
    for (int cc = 0; cc < l.cols(); ++cc) aug(r, cc) = l(r, cc);
    aug(r, l.cols()) = b[static_cast<size_t>(r)];
  }
  w.augmented_rank = exact_rank(aug);
  w.rank_gap = w.augmented_rank - w.rank;
  if (auto z = exact_solve(l, b)) {
    w.status = WitnessStatus::solved;
    w.z = to_double(hx * *z);
  } else {
    w.status = WitnessStatus::unsolvable;
    // Float distance of b from the column space, for reporting.
    LeastSquares ls = min_norm_solve(l.to_double(), to_double(b));
    w.residual = ls.residual / std::max(1e-300, to_double(b).norm());
    w.margin = w.residual;
  }
  return w;
}

GoVerdict go_check(const ReductiveSpace& sp, const MetricOperator& a, const SamplePlan& plan) {
  if (!sp.decomposed) throw InputError("go_check: space is not decomposed");
  if (plan.samples < 0) throw InputError("go_check: negative sample count");
  GoVerdict v;
  const int dm = sp.m.dim();
  std::optional<Rational> ql;
  std::optional<Rational> qm;
  if (plan.exact) {
    if (a.form != MetricOperator::Form::two_param) throw InputError("exact mode supports two-parameter metrics only");
    ql = rationalize(a.lambda);
    qm = rationalize(a.mu);
    if (!ql || !qm) throw InputError("exact mode needs rational lambda and mu");
  }
  bool any_unsolvable = false;
  for (int i = 0; i < plan.samples; ++i) {
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(i)));
    GoWitness w;
    if (plan.exact) {
      std::uniform_int_distribution<int> d(-4, 4);
      QVector xc(static_cast<size_t>(dm));
      bool nonzero = false;
      while (!nonzero)
        for (auto& c : xc) {
          c = d(rng);
          nonzero = nonzero || c != 0;
        }
      w = go_witness_exact(sp, *ql, *qm, xc);
    } else {
      Vector x;
      if (i % 2 == 1 && sp.has_parts()) {
        std::uniform_real_distribution<double> th(0.0, 2 * std::numbers::pi);
        const double t = th(rng);
        x = std::cos(t) * Vector(sp.parts[0].basis() * unit_vector(rng, sp.parts[0].dim())) +
            std::sin(t) * Vector(sp.parts[1].basis() * unit_vector(rng, sp.parts[1].dim()));
      } else {
        x = sp.m.basis() * unit_vector(rng, dm);
      }
      w = go_witness_general(sp, a, x, plan.tol);
    }
    ++v.samples;
    switch (w.status) {
      case WitnessStatus::solved:
        v.max_residual = std::max(v.max_residual, w.residual);
        v.max_witness_norm = std::max(v.max_witness_norm, sp.g->norm(w.z));
        break;
      case WitnessStatus::unsolvable:
        ++v.unsolvable;
        v.min_margin = any_unsolvable ? std::min(v.min_margin, w.margin) : w.margin;
        if (!any_unsolvable) v.counterexample = w;
        any_unsolvable = true;
        break;
      case WitnessStatus::inconclusive:
        ++v.inconclusive;
        break;
    }
    if (any_unsolvable && plan.stop_at_counterexample) break;
  }
  if (any_unsolvable)
    v.status = GoStatus::not_go;
  else if (v.inconclusive > 0)
    v.status = GoStatus::inconclusive;
  else
    v.status = a.scalar() ? GoStatus::normal_trivial : GoStatus::go_consistent;
  return v;
}

namespace {

void check_in_part(const ReductiveSpace& sp, int p, const Vector& v) {
  const Subspace& s = sp.parts[static_cast<size_t>(p)];
  if (s.distance(v) > 1e-8 * std::max(1.0, sp.g->norm(v)))
    throw InputError(std::string("vector is not in m") + (p == 0 ? "1" : "2"));
}

}  // namespace

GraphResult geodesic_graph(const ReductiveSpace& sp, double lambda, double mu, const Vector& x, const Vector& y,
                           double tol) {
  require_parts(sp, "geodesic_graph");
  if (!(lambda > 0) || !(mu > 0) || lambda == mu) throw InputError("geodesic_graph needs positive lambda != mu");
  check_in_part(sp, 0, x);
  check_in_part(sp, 1, y);
  const LieAlgebra& g = *sp.g;
  GraphResult r;
  r.z = Vector::Zero(g.dim());
  CentralizerSplit split = normalizer_split(sp.h, Vector(x + y));
  const Subspace& ct = split.c_tilde;
  r.c_tilde_dim = ct.dim();
  Vector ax = lambda * x + mu * y;
  const double scale = (lambda + mu) * std::pow(g.norm(x) + g.norm(y), 2);
  if (scale == 0.0) return r;
  Vector rhs = g.chol_upper() * ((lambda - mu) * g.bracket(x, y)) / scale;
  Matrix l(g.dim(), ct.dim());
  for (int i = 0; i < ct.dim(); ++i) l.col(i) = g.chol_upper() * g.bracket(Vector(ct.basis().col(i)), ax) / scale;
  LeastSquares ls = min_norm_solve(l, rhs);
  r.z = ct.basis() * ls.x;
  r.residual = ls.residual;
  r.kernel_dim = ct.dim() - ls.rank;
  r.status = r.residual <= tol ? WitnessStatus::solved
             : (ls.augmented_rank > ls.rank && r.residual >= 1e3 * tol) ? WitnessStatus::unsolvable
                                                                         : WitnessStatus::inconclusive;
  return r;
}

ZxZy zxzy_decompose(const ReductiveSpace& sp, const Vector& x, const Vector& y, double tol) {
  require_parts(sp, "zxzy_decompose");
  check_in_part(sp, 0, x);
  check_in_part(sp, 1, y);
  const LieAlgebra& g = *sp.g;
  ZxZy r;
  r.zx = Vector::Zero(g.dim());
  r.zy = Vector::Zero(g.dim());
  CentralizerSplit split = normalizer_split(sp.h, Vector(x + y));
  Subspace ax = intersect(split.c_tilde, centralizer(sp.h, x));
  Subspace ay = intersect(split.c_tilde, centralizer(sp.h, y));
  const double scale = std::pow(g.norm(x) + g.norm(y), 2);
  if (scale == 0.0) return r;
  const int na = ax.dim();
  const int nb = ay.dim();
  Matrix l(g.dim(), na + nb);
  for (int i = 0; i < na; ++i) l.col(i) = g.chol_upper() * g.bracket(Vector(ax.basis().col(i)), y) / scale;
  for (int j = 0; j < nb; ++j) l.col(na + j) = g.chol_upper() * g.bracket(Vector(ay.basis().col(j)), x) / scale;
  Vector rhs = g.chol_upper() * g.bracket(x, y) / scale;
  LeastSquares ls = min_norm_solve(l, rhs);
  r.zx = ax.basis() * ls.x.head(na);
  r.zy = ay.basis() * ls.x.tail(nb);
  r.residual = ls.residual;
  r.kernel_dim = na + nb - ls.rank;
  r.status = r.residual <= tol ? WitnessStatus::solved
             : (ls.augmented_rank > ls.rank && r.residual >= 1e3 * tol) ? WitnessStatus::unsolvable
                                                                         : WitnessStatus::inconclusive;
  return r;
}

double reconstruction_gap(const ReductiveSpace& sp, double lambda, double mu, const Vector& x, const Vector& y,
                          double tol) {
  GraphResult gr = geodesic_graph(sp, lambda, mu, x, y, tol);
  ZxZy d = zxzy_decompose(sp, x, y, tol);
  if (gr.status != WitnessStatus::solved || d.status != WitnessStatus::solved) return -1.0;
  Vector z = ((lambda - mu) / mu) * d.zx + ((lambda - mu) / lambda) * d.zy;
  return sp.g->norm(Vector(gr.z - z)) / std::max(1.0, sp.g->norm(gr.z));
}

}  // namespace orbitcheck
