#include "orbitcheck/zoo.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

void QCMat::add(int r, int c, const Rational& re, const Rational& im) {
  if (sgn(re) == 0 && sgn(im) == 0) return;
  auto& slot = e_[{r, c}];
  slot.re += re;
  slot.im += im;
  if (sgn(slot.re) == 0 && sgn(slot.im) == 0) e_.erase({r, c});
}

QCMat QCMat::operator*(const QCMat& o) const {
  QCMat out(n_);
  for (const auto& [pa, a] : e_) {
    const int k = pa.second;
    for (auto it = o.e_.lower_bound({k, -1}); it != o.e_.end() && it->first.first == k; ++it) {
      const QComplex& b = it->second;
      out.add(pa.first, it->first.second, a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
  }
  return out;
}

QCMat QCMat::operator+(const QCMat& o) const {
  QCMat out = *this;
  for (const auto& [p, v] : o.e_) out.add(p.first, p.second, v.re, v.im);
  return out;
}

QCMat QCMat::operator-(const QCMat& o) const {
  QCMat out = *this;
  for (const auto& [p, v] : o.e_) out.add(p.first, p.second, -v.re, -v.im);
  return out;
}

QCMat QCMat::scaled(const Rational& s) const {
  QCMat out(n_);
  for (const auto& [p, v] : e_) out.add(p.first, p.second, s * v.re, s * v.im);
  return out;
}

QCMat QCMat::adjoint() const {
  QCMat out(n_);
  for (const auto& [p, v] : e_) out.add(p.second, p.first, v.re, -v.im);
  return out;
}

QCMat QCMat::transpose() const {
  QCMat out(n_);
  for (const auto& [p, v] : e_) out.add(p.second, p.first, v.re, v.im);
  return out;
}

QCMat QCMat::conj() const {
  QCMat out(n_);
  for (const auto& [p, v] : e_) out.add(p.first, p.second, v.re, -v.im);
  return out;
}

bool QCMat::operator==(const QCMat& o) const {
  if (e_.size() != o.e_.size()) return false;
  for (const auto& [p, v] : e_) {
    auto it = o.e_.find(p);
    if (it == o.e_.end() || it->second.re != v.re || it->second.im != v.im) return false;
  }
  return true;
}

Eigen::MatrixXcd QCMat::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& [p, v] : e_) m(p.first, p.second) = {v.re.get_d(), v.im.get_d()};
  return m;
}

namespace {

// Re tr(a^* b) = sum over positions of Re(conj(a) b).
Rational pairing(const QCMat& a, const QCMat& b) {
  Rational s = 0;
  for (const auto& [p, v] : a.entries()) {
    auto it = b.entries().find(p);
    if (it != b.entries().end()) s += v.re * it->second.re + v.im * it->second.im;
  }
  return s;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Realization::Realization(int n, std::vector<QCMat> basis) : n_(n), basis_(std::move(basis)) {
  const int d = dim();
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  std::map<std::pair<int, int>, int> owner;
  for (int a = 0; a < d; ++a) {
    dense_.push_back(basis_[a].to_dense());
    for (const auto& [p, v] : basis_[a].entries()) {
      auto [it, inserted] = owner.emplace(p, a);
      if (!inserted) parent[find_root(parent, a)] = find_root(parent, it->second);
    }
  }
  std::map<int, int> index_of_root;
  component_of_.assign(d, -1);
  for (int a = 0; a < d; ++a) {
    int r = find_root(parent, a);
    auto [it, inserted] = index_of_root.emplace(r, static_cast<int>(components_.size()));
    if (inserted) components_.push_back({});
    components_[it->second].members.push_back(a);
    component_of_[a] = it->second;
  }
  for (auto& comp : components_) {
    const int k = static_cast<int>(comp.members.size());
    QMatrix g(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) g(i, j) = pairing(basis_[comp.members[i]], basis_[comp.members[j]]);
    QMatrix aug = g.hcat(QMatrix::identity(k));
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < k || piv[k - 1] != k - 1)
      throw InvariantViolation("realization basis is linearly dependent");
    comp.gram_inv = aug.columns(k, k);
    comp.gram_inv_f = comp.gram_inv.to_double();
  }
}

std::optional<QVector> Realization::coords(const QCMat& x) const {
  QVector out(dim());
  for (const auto& comp : components_) {
    const int k = static_cast<int>(comp.members.size());
    QVector rhs(k);
    bool any = false;
    for (int i = 0; i < k; ++i) {
      rhs[i] = pairing(basis_[comp.members[i]], x);
      any = any || sgn(rhs[i]) != 0;
    }
    if (!any) continue;
    QVector c = comp.gram_inv * rhs;
    for (int i = 0; i < k; ++i) out[comp.members[i]] = c[i];
  }
  QCMat back(n_);
  for (int a = 0; a < dim(); ++a)
    if (sgn(out[a]) != 0) back = back + basis_[a].scaled(out[a]);
  if (!(back == x)) return std::nullopt;
  return out;
}

Vector Realization::coords(const Eigen::MatrixXcd& x, double* residual) const {
  Vector out = Vector::Zero(dim());
  for (const auto& comp : components_) {
    const int k = static_cast<int>(comp.members.size());
    Vector rhs(k);
    for (int i = 0; i < k; ++i) rhs(i) = (dense_[comp.members[i]].adjoint() * x).trace().real();
    Vector c = comp.gram_inv_f * rhs;
    for (int i = 0; i < k; ++i) out(comp.members[i]) = c(i);
  }
  if (residual != nullptr) *residual = (matrix(out) - x).norm();
  return out;
}

Eigen::MatrixXcd Realization::matrix(const Vector& x) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int a = 0; a < dim(); ++a)
    if (x(a) != 0.0) m += x(a) * dense_[a];
  return m;
}

StructureTensor structure_from_realization(const Realization& r) {
  StructureTensor t;
  t.dim = r.dim();
  for (int a = 0; a < r.dim(); ++a)
    for (int b = a + 1; b < r.dim(); ++b) {
      QCMat c = r.basis()[a].commutator(r.basis()[b]);
      if (c.is_zero()) continue;
      auto x = r.coords(c);
      if (!x)
        throw InvariantViolation("matrix span is not closed under the commutator at basis pair (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ")");
      for (int k = 0; k < r.dim(); ++k)
        if (sgn((*x)[k]) != 0) t.add_antisymmetric(a, b, k, (*x)[k]);
    }
  return t;
}

std::vector<QCMat> so_basis(int n) {
  std::vector<QCMat> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QCMat m(n);
      m.add(i, j, 1);
      m.add(j, i, -1);
      out.push_back(m);
    }
  return out;
}

std::vector<QCMat> su_basis(int n) {
  std::vector<QCMat> out;
  for (int k = 0; k + 1 < n; ++k) {
    QCMat m(n);
    m.add(k, k, 0, 1);
    m.add(k + 1, k + 1, 0, -1);
    out.push_back(m);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QCMat a(n), b(n);
      a.add(i, j, 1);
      a.add(j, i, -1);
      b.add(i, j, 0, 1);
      b.add(j, i, 0, 1);
      out.push_back(a);
      out.push_back(b);
    }
  return out;
}

std::vector<QCMat> u_basis(int n) {
  std::vector<QCMat> out = su_basis(n);
  QCMat id(n);
  for (int k = 0; k < n; ++k) id.add(k, k, 0, 1);
  out.push_back(id);
  return out;
}

std::vector<QCMat> sp_basis(int n) {
  // X = [[A, -conj(B)], [B, conj(A)]] in size 2n.
  const int s = 2 * n;
  auto from_a = [&](const QCMat& a) {
    QCMat m(s);
    for (const auto& [p, v] : a.entries()) {
      m.add(p.first, p.second, v.re, v.im);
      m.add(p.first + n, p.second + n, v.re, -v.im);
    }
    return m;
  };
  auto from_b = [&](const QCMat& b) {
    QCMat m(s);
    for (const auto& [p, v] : b.entries()) {
      m.add(p.first + n, p.second, v.re, v.im);
      m.add(p.first, p.second + n, -v.re, v.im);
    }
    return m;
  };
  std::vector<QCMat> out;
  for (int a = 0; a < n; ++a) {
    QCMat m(n);
    m.add(a, a, 0, 1);
    out.push_back(from_a(m));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      QCMat x(n), y(n);
      x.add(a, b, 1);
      x.add(b, a, -1);
      y.add(a, b, 0, 1);
      y.add(b, a, 0, 1);
      out.push_back(from_a(x));
      out.push_back(from_a(y));
    }
  for (int a = 0; a < n; ++a) {
    QCMat x(n), y(n);
    x.add(a, a, 1);
    y.add(a, a, 0, 1);
    out.push_back(from_b(x));
    out.push_back(from_b(y));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      QCMat x(n), y(n);
      x.add(a, b, 1);
      x.add(b, a, 1);
      y.add(a, b, 0, 1);
      y.add(b, a, 0, 1);
      out.push_back(from_b(x));
      out.push_back(from_b(y));
    }
  return out;
}

int classical_dim(const std::string& family, int n) {
  if (family == "so") return n * (n - 1) / 2;
  if (family == "su") return n * n - 1;
  if (family == "sp") return n * (2 * n + 1);
  if (family == "u") return n * n;
  if (family == "torus") return n;
  throw InputError("unknown algebra family '" + family + "' (expected so, su, sp, u or torus)");
}

namespace {

struct Range {
  int lo;
  int hi;
};

Range family_range(const std::string& family) {
  if (family == "so") return {2, 16};
  if (family == "su") return {2, 8};
  if (family == "sp") return {1, 7};
  if (family == "u") return {1, 8};
  if (family == "torus") return {1, 64};
  throw InputError("unknown algebra family '" + family + "' (expected so, su, sp, u or torus)");
}

ClassicalAlgebra build(const std::string& family, int n) {
  const std::string name = family + "(" + std::to_string(n) + ")";
  if (family == "torus") {
    StructureTensor t;
    t.dim = n;
    return {make_algebra(std::move(t), name), Realization()};
  }
  std::vector<QCMat> basis;
  int size = n;
  if (family == "so")
    basis = so_basis(n);
  else if (family == "su")
    basis = su_basis(n);
  else if (family == "u")
    basis = u_basis(n);
  else {
    basis = sp_basis(n);
    size = 2 * n;
  }
  Realization r(size, std::move(basis));
  auto alg = make_algebra(structure_from_realization(r), name);
  return {alg, std::move(r)};
}

}  // namespace

const ClassicalAlgebra& classical(const std::string& family, int n) {
  Range r = family_range(family);
  if (n < r.lo || n > r.hi)
    throw InputError(family + "(" + std::to_string(n) + "): rank outside supported range [" + std::to_string(r.lo) +
                     ", " + std::to_string(r.hi) + "]");
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, ClassicalAlgebra> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(family, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(family, n)).first;
  return it->second;
}

AlgebraPtr classical_algebra(const std::string& family, int n) { return classical(family, n).algebra; }

}  // namespace orbitcheck
