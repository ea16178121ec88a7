#include "orbitcheck/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

void StructureTensor::add(int i, int j, int k, const Rational& q) {
  if (sgn(q) == 0) return;
  entries.push_back({i, j, k, q, q.get_d()});
}

void StructureTensor::add(int i, int j, int k, double v) {
  exact = false;
  if (v == 0.0) return;
  entries.push_back({i, j, k, Rational(0), v});
}

void StructureTensor::add_antisymmetric(int i, int j, int k, const Rational& q) {
  add(i, j, k, q);
  add(j, i, k, Rational(-q));
}

namespace {

std::string where(int i, int j, int k) {
  std::ostringstream os;
  os << "[" << i << "][" << j << "][" << k << "]";
  return os.str();
}

void check_shape(const StructureTensor& t) {
  if (t.dim < 0) throw InputError("structure tensor: dim must be nonnegative");
  for (size_t e = 0; e < t.entries.size(); ++e) {
    const auto& s = t.entries[e];
    if (s.i < 0 || s.j < 0 || s.k < 0 || s.i >= t.dim || s.j >= t.dim || s.k >= t.dim)
      throw InputError("structure tensor entry " + std::to_string(e) + " has index " + where(s.i, s.j, s.k) +
                       " outside dim " + std::to_string(t.dim));
  }
}

// Merged sparse rows keyed by (i, j): duplicates are summed, zeros dropped.
struct Rows {
  int n = 0;
  std::vector<std::vector<LieAlgebra::Term>> f;
  std::vector<std::vector<LieAlgebra::QTerm>> q;
};

Rows build_rows(const StructureTensor& t) {
  Rows r;
  r.n = t.dim;
  const size_t n2 = static_cast<size_t>(t.dim) * t.dim;
  r.f.resize(n2);
  if (t.exact) {
    std::vector<std::map<int, Rational>> acc(n2);
    for (const auto& e : t.entries) acc[static_cast<size_t>(e.i) * t.dim + e.j][e.k] += e.q;
    r.q.resize(n2);
    for (size_t p = 0; p < n2; ++p)
      for (auto& [k, q] : acc[p])
        if (sgn(q) != 0) {
          r.q[p].push_back({k, q});
          r.f[p].push_back({k, q.get_d()});
        }
  } else {
    std::vector<std::map<int, double>> acc(n2);
    for (const auto& e : t.entries) acc[static_cast<size_t>(e.i) * t.dim + e.j][e.k] += e.v;
    for (size_t p = 0; p < n2; ++p)
      for (auto& [k, v] : acc[p])
        if (v != 0.0) r.f[p].push_back({k, v});
  }
  return r;
}

template <class T>
double magnitude(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return std::abs(x.get_d());
  else
    return std::abs(x);
}

template <class Term, class Value>
void jacobi_scan(int n, const std::vector<std::vector<Term>>& rows, bool all_triples, ValidationReport& rep) {
  auto row = [&](int a, int b) -> const std::vector<Term>& { return rows[static_cast<size_t>(a) * n + b]; };
  std::vector<Value> acc(n);
  std::vector<char> touched(n, 0);
  std::vector<int> list;
  auto add_term = [&](int a, int b, int c) {
    // acc += [[e_a, e_b], e_c]
    for (const auto& t1 : row(a, b)) {
      for (const auto& t2 : row(t1.k, c)) {
        if constexpr (std::is_same_v<Value, Rational>)
          acc[t2.k] += t1.q * t2.q;
        else
          acc[t2.k] += t1.v * t2.v;
        if (!touched[t2.k]) {
          touched[t2.k] = 1;
          list.push_back(t2.k);
        }
      }
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = all_triples ? 0 : i + 1; j < n; ++j)
      for (int l = all_triples ? 0 : j + 1; l < n; ++l) {
        add_term(i, j, l);
        add_term(j, l, i);
        add_term(l, i, j);
        for (int k : list) {
          double m = magnitude(acc[k]);
          if (m > rep.max_jacobi) {
            rep.max_jacobi = m;
            rep.jacobi_at = {i, j, l};
          }
          acc[k] = 0;
          touched[k] = 0;
        }
        list.clear();
      }
}

}  // namespace

ValidationReport validate_algebra(const StructureTensor& t, double tol) {
  check_shape(t);
  ValidationReport rep;
  rep.dim = t.dim;
  rep.exact = t.exact;
  Rows r = build_rows(t);
  const int n = t.dim;
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& a = r.f[static_cast<size_t>(i) * n + j];
      const auto& b = r.f[static_cast<size_t>(j) * n + i];
      for (const auto& t1 : a) scale = std::max(scale, std::abs(t1.v));
      // antisymmetry: c[i][j][k] + c[j][i][k]
      std::map<int, double> sum;
      std::map<int, Rational> qsum;
      for (const auto& t1 : a) sum[t1.k] += t1.v;
      for (const auto& t1 : b) sum[t1.k] += t1.v;
      if (t.exact) {
        for (const auto& t1 : r.q[static_cast<size_t>(i) * n + j]) qsum[t1.k] += t1.q;
        for (const auto& t1 : r.q[static_cast<size_t>(j) * n + i]) qsum[t1.k] += t1.q;
      }
      for (auto& [k, v] : sum) {
        double m = t.exact ? std::abs(qsum[k].get_d()) : std::abs(v);
        if (t.exact && sgn(qsum[k]) != 0 && m == 0.0) m = 1e-300;
        if (m > rep.max_antisymmetry) {
          rep.max_antisymmetry = m;
          rep.antisymmetry_at = {i, j, k};
        }
      }
    }
  const bool antisym = rep.max_antisymmetry == 0.0 || (!t.exact && rep.max_antisymmetry <= tol * std::max(1.0, scale));
  if (t.exact)
    jacobi_scan<LieAlgebra::QTerm, Rational>(n, r.q, !antisym, rep);
  else
    jacobi_scan<LieAlgebra::Term, double>(n, r.f, !antisym, rep);
  if (t.exact)
    rep.passed = rep.max_antisymmetry == 0.0 && rep.max_jacobi == 0.0;
  else
    rep.passed = rep.max_antisymmetry <= tol * std::max(1.0, scale) &&
                 rep.max_jacobi <= tol * std::max(1.0, scale * scale);
  return rep;
}

namespace {

QMatrix killing_from_rows(int n, const std::vector<std::vector<LieAlgebra::QTerm>>& q) {
  auto row = [&](int a, int b) -> const std::vector<LieAlgebra::QTerm>& { return q[static_cast<size_t>(a) * n + b]; };
  QMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational s = 0;
      // B_ij = sum_{m,k} c[i][m][k] c[j][k][m]
      for (int m = 0; m < n; ++m)
        for (const auto& t1 : row(i, m))
          for (const auto& t2 : row(j, t1.k))
            if (t2.k == m) s += t1.q * t2.q;
      b(i, j) = s;
      b(j, i) = s;
    }
  return b;
}

}  // namespace

Matrix killing_form(const LieAlgebra& g) {
  const int n = g.dim();
  Matrix f(static_cast<Eigen::Index>(n) * n, n), ft(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i) {
    const Matrix& a = g.ad_basis(i);
    Matrix at = a.transpose();
    f.col(i) = Eigen::Map<const Vector>(a.data(), a.size());
    ft.col(i) = Eigen::Map<const Vector>(at.data(), at.size());
  }
  Matrix b = f.transpose() * ft;
  return 0.5 * (b + b.transpose());
}

QMatrix killing_form_exact(const LieAlgebra& g) {
  if (!g.exact()) throw Error("killing_form_exact: algebra '" + g.name() + "' has float structure constants");
  std::vector<std::vector<LieAlgebra::QTerm>> q(static_cast<size_t>(g.dim()) * g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) q[static_cast<size_t>(i) * g.dim() + j] = g.qrow(i, j);
  return killing_from_rows(g.dim(), q);
}

namespace {

// Default inner product: -B plus P^T P, P the projection onto the center along [g,g].
// For compact algebras the center is the kernel of the Killing form.
QMatrix default_inner_exact(int n, const Rows& r) {
  QMatrix b = killing_from_rows(n, r.q);
  QMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = -b(i, j);
  QMatrix z = exact_nullspace(b);
  if (z.cols() == 0) return q;
  // Derived algebra: span of brackets of basis vectors, grown until rank n - dim z.
  const int want = n - z.cols();
  std::vector<QVector> derived;
  QMatrix echelon(0, n);
  std::vector<QVector> reduced;
  std::vector<int> pivots;
  for (int i = 0; i < n && static_cast<int>(derived.size()) < want; ++i)
    for (int j = i + 1; j < n && static_cast<int>(derived.size()) < want; ++j) {
      const auto& terms = r.q[static_cast<size_t>(i) * n + j];
      if (terms.empty()) continue;
      QVector v(n);
      for (const auto& t : terms) v[t.k] = t.q;
      QVector w = v;
      for (size_t p = 0; p < reduced.size(); ++p)
        if (sgn(w[pivots[p]]) != 0) w = w - Rational(w[pivots[p]] / reduced[p][pivots[p]]) * reduced[p];
      int piv = -1;
      for (int k = 0; k < n; ++k)
        if (sgn(w[k]) != 0) {
          piv = k;
          break;
        }
      if (piv < 0) continue;
      reduced.push_back(w);
      pivots.push_back(piv);
      derived.push_back(v);
    }
  if (static_cast<int>(derived.size()) != want)
    throw InputError("algebra is not reductive: center and derived algebra do not span (supply an inner product)");
  QMatrix basis(n, n);
  for (int c = 0; c < z.cols(); ++c) basis.set_column(c, z.column(c));
  for (int c = 0; c < want; ++c) basis.set_column(z.cols() + c, derived[c]);
  // P = Z * (rows of basis^{-1} belonging to Z)
  QMatrix aug = basis.hcat(QMatrix::identity(n));
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw InputError("center and derived algebra overlap");
  QMatrix inv = aug.columns(n, n);
  QMatrix zrows(z.cols(), n);
  for (int a = 0; a < z.cols(); ++a)
    for (int c = 0; c < n; ++c) zrows(a, c) = inv(a, c);
  QMatrix p = z * zrows;
  QMatrix ptp = p.transpose() * p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) += ptp(i, j);
  return q;
}

Matrix default_inner_float(const LieAlgebra& g, int n, double rel_tol) {
  Matrix b = killing_form(g);
  Matrix q = -b;
  Matrix z = nullspace(b, 1e-10);
  if (z.cols() == 0) return q;
  std::vector<Vector> brackets;
  Matrix d(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector v = g.ad_basis(i).col(j);
      if (v.norm() == 0.0) continue;
      d.conservativeResize(Eigen::NoChange, d.cols() + 1);
      d.col(d.cols() - 1) = v;
    }
  Matrix dn = orthonormal_columns(d, rel_tol);
  if (dn.cols() + z.cols() != n)
    throw InputError("algebra is not reductive: center and derived algebra do not span (supply an inner product)");
  Matrix basis(n, n);
  basis << z, dn;
  Matrix inv = basis.inverse();
  Matrix p = z * inv.topRows(z.cols());
  return q + p.transpose() * p;
}

}  // namespace

LieAlgebra::LieAlgebra(StructureTensor tensor, std::string name, std::optional<QMatrix> exact_inner,
                       std::optional<Matrix> inner, double tol)
    : dim_(tensor.dim), name_(std::move(name)), tensor_(std::move(tensor)) {
  ValidationReport rep = validate_algebra(tensor_, tol);
  if (!rep.passed) {
    std::ostringstream os;
    os << "algebra '" << name_ << "' fails validation: antisymmetry " << rep.max_antisymmetry << " at "
       << where(rep.antisymmetry_at[0], rep.antisymmetry_at[1], rep.antisymmetry_at[2]) << ", Jacobi "
       << rep.max_jacobi << " at (" << rep.jacobi_at[0] << "," << rep.jacobi_at[1] << "," << rep.jacobi_at[2] << ")";
    throw InvariantViolation(os.str());
  }
  Rows r = build_rows(tensor_);
  rows_ = std::move(r.f);
  qrows_ = r.q;
  const int n = dim_;
  ad_.assign(n, Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (const auto& t : row(i, m)) ad_[i](t.k, m) += t.v;

  if (exact_inner) {
    if (exact_inner->rows() != n || exact_inner->cols() != n) throw InputError("inner product has wrong shape");
    exact_inner_ = std::move(exact_inner);
    inner_ = exact_inner_->to_double();
  } else if (inner) {
    if (inner->rows() != n || inner->cols() != n) throw InputError("inner product has wrong shape");
    inner_ = *inner;
  } else if (tensor_.exact) {
    r.f = rows_;
    exact_inner_ = default_inner_exact(n, r);
    inner_ = exact_inner_->to_double();
  } else {
    inner_ = default_inner_float(*this, n, tol);
  }
  if ((inner_ - inner_.transpose()).norm() > tol * std::max(1.0, inner_.norm()))
    throw InputError("inner product of '" + name_ + "' is not symmetric");
  Eigen::LLT<Matrix> llt(inner_);
  if (llt.info() != Eigen::Success || (llt.matrixL().toDenseMatrix().diagonal().array() <= 0).any())
    throw InputError("inner product of '" + name_ + "' is not positive definite (non-compact algebra?)");
  chol_upper_ = llt.matrixU();
  if (exact_inner_) {
    if (!ad_invariant_exact(*this))
      throw InvariantViolation("inner product of '" + name_ + "' is not ad-invariant");
  } else {
    double scale = 1.0;
    for (const auto& a : ad_) scale = std::max(scale, a.norm());
    if (ad_invariance_residual(*this) > tol * scale * std::max(1.0, inner_.norm()))
      throw InvariantViolation("inner product of '" + name_ + "' is not ad-invariant");
  }
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw InputError("bracket: dimension mismatch");
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j) == 0.0) continue;
      const double s = x(i) * y(j);
      for (const auto& t : row(i, j)) out(t.k) += s * t.v;
    }
  }
  return out;
}

QVector LieAlgebra::bracket(const QVector& x, const QVector& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw InputError("bracket: dimension mismatch");
  if (!exact()) throw Error("exact bracket requested on float algebra '" + name_ + "'");
  QVector out(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational s = x[i] * y[j];
      for (const auto& t : qrow(i, j)) out[t.k] += s * t.q;
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  Matrix a = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) a += x(i) * ad_[i];
  return a;
}

Rational LieAlgebra::dot(const QVector& x, const QVector& y) const {
  if (!exact_inner_) throw Error("exact inner product unavailable for '" + name_ + "'");
  Rational s = 0;
  for (int i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim_; ++j)
      if (sgn(y[j]) != 0) s += x[i] * (*exact_inner_)(i, j) * y[j];
  }
  return s;
}

QMatrix center_exact(const LieAlgebra& g) {
  if (!g.exact()) throw Error("center_exact: float algebra");
  const int n = g.dim();
  QMatrix a(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (const auto& t : g.qrow(i, m)) a(i * n + t.k, m) += t.q;
  return exact_nullspace(a);
}

Matrix center(const LieAlgebra& g, double rel_tol) {
  const int n = g.dim();
  Matrix a(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i) a.middleRows(static_cast<Eigen::Index>(i) * n, n) = g.ad_basis(i);
  return nullspace(a, rel_tol);
}

double ad_invariance_residual(const LieAlgebra& g) {
  double worst = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    Matrix s = g.ad_basis(i).transpose() * g.inner() + g.inner() * g.ad_basis(i);
    worst = std::max(worst, s.cwiseAbs().maxCoeff());
  }
  return worst;
}

bool ad_invariant_exact(const LieAlgebra& g) {
  if (!g.exact() || !g.exact_inner()) return false;
  const int n = g.dim();
  const QMatrix& q = *g.exact_inner();
  for (int i = 0; i < n; ++i) {
    // (ad_i^T Q + Q ad_i)(a, b) = sum_k ad_i(k,a) Q(k,b) + Q(a,k) ad_i(k,b)
    QMatrix ad(n, n);
    for (int m = 0; m < n; ++m)
      for (const auto& t : g.qrow(i, m)) ad(t.k, m) += t.q;
    QMatrix s = ad.transpose() * q;
    QMatrix s2 = q * ad;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (sgn(s(a, b) + s2(a, b)) != 0) return false;
  }
  return true;
}

LieAlgebra direct_sum(const std::vector<AlgebraPtr>& summands, std::string name) {
  if (summands.empty()) throw InputError("direct_sum: empty list");
  StructureTensor t;
  bool exact = true;
  bool exact_inner = true;
  for (const auto& s : summands) {
    t.dim += s->dim();
    exact = exact && s->exact();
    exact_inner = exact_inner && s->exact_inner().has_value();
  }
  t.exact = exact;
  int off = 0;
  std::string auto_name;
  for (const auto& s : summands) {
    for (const auto& e : s->tensor().entries) {
      StructureEntry c = e;
      c.i += off;
      c.j += off;
      c.k += off;
      t.entries.push_back(c);
    }
    if (!auto_name.empty()) auto_name += "+";
    auto_name += s->name();
    off += s->dim();
  }
  if (!exact)
    for (auto& e : t.entries) e.q = 0;
  const int n = t.dim;
  if (exact_inner) {
    QMatrix q(n, n);
    off = 0;
    for (const auto& s : summands) {
      for (int a = 0; a < s->dim(); ++a)
        for (int b = 0; b < s->dim(); ++b) q(off + a, off + b) = (*s->exact_inner())(a, b);
      off += s->dim();
    }
    return LieAlgebra(std::move(t), name.empty() ? auto_name : name, std::move(q));
  }
  Matrix q = Matrix::Zero(n, n);
  off = 0;
  for (const auto& s : summands) {
    q.block(off, off, s->dim(), s->dim()) = s->inner();
    off += s->dim();
  }
  return LieAlgebra(std::move(t), name.empty() ? auto_name : name, std::nullopt, std::move(q));
}

AlgebraPtr make_algebra(StructureTensor tensor, std::string name, std::optional<QMatrix> exact_inner,
                        std::optional<Matrix> inner) {
  return std::make_shared<const LieAlgebra>(std::move(tensor), std::move(name), std::move(exact_inner),
                                            std::move(inner));
}

// ---------------------------------------------------------------- subspaces

Matrix q_orthonormalize(const LieAlgebra& g, const Matrix& spanning, double rel_tol) {
  if (spanning.cols() == 0) return Matrix(g.dim(), 0);
  Matrix y = g.chol_upper() * spanning;
  Matrix w = orthonormal_columns(y, rel_tol);
  return g.chol_upper().triangularView<Eigen::Upper>().solve(w);
}

namespace {

std::vector<int> independent_columns(const QMatrix& a) {
  QMatrix c = a;
  return rref(c);
}

QMatrix select_columns(const QMatrix& a, const std::vector<int>& cols) {
  QMatrix out(a.rows(), static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < a.rows(); ++r) out(r, static_cast<int>(c)) = a(r, cols[c]);
  return out;
}

}  // namespace

Subspace::Subspace(AlgebraPtr ambient, const Matrix& spanning, double rel_tol) : ambient_(std::move(ambient)) {
  if (spanning.rows() != ambient_->dim()) throw InputError("subspace: column length differs from algebra dimension");
  basis_ = q_orthonormalize(*ambient_, spanning, rel_tol);
}

Subspace::Subspace(AlgebraPtr ambient, const QMatrix& spanning) : ambient_(std::move(ambient)) {
  if (spanning.rows() != ambient_->dim()) throw InputError("subspace: column length differs from algebra dimension");
  exact_ = select_columns(spanning, independent_columns(spanning));
  basis_ = q_orthonormalize(*ambient_, exact_->to_double(), 1e-12);
  if (basis_.cols() != exact_->cols())
    throw NumericalFailure("subspace: float basis lost rank relative to exact basis");
}

Vector Subspace::coords(const Vector& x) const { return basis_.transpose() * (ambient_->inner() * x); }

Vector Subspace::project(const Vector& x) const { return basis_ * coords(x); }

double Subspace::distance(const Vector& x) const { return ambient_->norm(x - project(x)); }

Subspace whole(const AlgebraPtr& g) { return Subspace(g, QMatrix::identity(g->dim())); }

Subspace complement(const Subspace& inner, const Subspace* outer) {
  const AlgebraPtr& g = inner.ambient();
  Subspace full;
  if (outer == nullptr) {
    full = g->exact_inner() ? whole(g) : Subspace(g, Matrix(Matrix::Identity(g->dim(), g->dim())));
    outer = &full;
  }
  if (inner.exact() && outer->exact() && g->exact_inner()) {
    const QMatrix& o = *outer->exact_basis();
    QMatrix cond = inner.exact_basis()->transpose() * (*g->exact_inner() * o);
    QMatrix coeff = exact_nullspace(cond);
    if (coeff.cols() == 0) return Subspace(g, QMatrix(g->dim(), 0));
    return Subspace(g, o * coeff);
  }
  Matrix wi = g->chol_upper() * inner.basis();
  Matrix wo = g->chol_upper() * outer->basis();
  Matrix k = nullspace(wi.transpose() * wo, 1e-8);
  return Subspace(g, Matrix(outer->basis() * k));
}

Subspace intersect(const Subspace& a, const Subspace& b, double rel_tol) {
  const AlgebraPtr& g = a.ambient();
  if (a.exact() && b.exact()) {
    QMatrix m = a.exact_basis()->hcat(*b.exact_basis());
    QMatrix k = exact_nullspace(m);
    QMatrix top(a.dim(), k.cols());
    for (int r = 0; r < a.dim(); ++r)
      for (int c = 0; c < k.cols(); ++c) top(r, c) = k(r, c);
    if (k.cols() == 0) return Subspace(g, QMatrix(g->dim(), 0));
    return Subspace(g, *a.exact_basis() * top);
  }
  if (a.dim() == 0 || b.dim() == 0) return Subspace(g, Matrix(g->dim(), 0));
  Matrix wa = g->chol_upper() * a.basis();
  Matrix wb = g->chol_upper() * b.basis();
  Eigen::JacobiSVD<Matrix> svd(wa.transpose() * wb, Eigen::ComputeFullU);
  int k = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1.0 - rel_tol) ++k;
  return Subspace(g, Matrix(a.basis() * svd.matrixU().leftCols(k)));
}

Subspace span_sum(const Subspace& a, const Subspace& b, double rel_tol) {
  const AlgebraPtr& g = a.ambient();
  if (a.exact() && b.exact()) return Subspace(g, a.exact_basis()->hcat(*b.exact_basis()));
  Matrix m(g->dim(), a.dim() + b.dim());
  m << a.basis(), b.basis();
  return Subspace(g, m, rel_tol);
}

double bracket_leak(const Subspace& a, const Subspace& b, const Subspace& target) {
  const LieAlgebra& g = *a.ambient();
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      Vector v = g.bracket(Vector(a.basis().col(i)), Vector(b.basis().col(j)));
      scale = std::max(scale, g.norm(v));
      worst = std::max(worst, target.distance(v));
    }
  return worst / std::max(1.0, scale);
}

bool in_span_exact(const QMatrix& span, const QVector& v) {
  if (is_zero(v)) return true;
  if (span.cols() == 0) return false;
  return exact_solve(span, v).has_value();
}

bool bracket_contained_exact(const Subspace& a, const Subspace& b, const Subspace& target) {
  if (!a.exact() || !b.exact() || !target.exact()) throw Error("bracket_contained_exact: subspaces are not exact");
  const LieAlgebra& g = *a.ambient();
  const QMatrix& ea = *a.exact_basis();
  const QMatrix& eb = *b.exact_basis();
  // Membership via the orthogonality test against an exact complement basis.
  Subspace comp = complement(target);
  if (comp.dim() == 0) return true;
  const QMatrix& c = *comp.exact_basis();
  const QMatrix& q = *g.exact_inner();
  QMatrix cq = c.transpose() * q;
  for (int i = 0; i < ea.cols(); ++i) {
    QVector x = ea.column(i);
    for (int j = 0; j < eb.cols(); ++j) {
      QVector v = g.bracket(x, eb.column(j));
      if (!is_zero(cq * v)) return false;
    }
  }
  return true;
}

}  // namespace orbitcheck
