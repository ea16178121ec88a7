#include "orbitcheck/registry.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <regex>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/octonion.hpp"

namespace orbitcheck {

namespace {

using CMat = Eigen::MatrixXcd;

// Entry (r, c) of x goes to (map[r], map[c]) of a size-n matrix.
QCMat place(const QCMat& x, int n, const std::vector<int>& map) {
  QCMat out(n);
  for (const auto& [p, v] : x.entries()) out.add(map[p.first], map[p.second], v.re, v.im);
  return out;
}

std::vector<int> shift(int count, int offset) {
  std::vector<int> m(count);
  for (int i = 0; i < count; ++i) m[i] = i + offset;
  return m;
}

QCMat at(const QCMat& x, int n, int offset) { return place(x, n, shift(x.size(), offset)); }

std::vector<QCMat> at(const std::vector<QCMat>& xs, int n, int offset) {
  std::vector<QCMat> out;
  for (const auto& x : xs) out.push_back(at(x, n, offset));
  return out;
}

// X = A + iB (k x k) to [[A, -B], [B, A]].
QCMat real_form(const QCMat& x) {
  const int k = x.size();
  QCMat out(2 * k);
  for (const auto& [p, v] : x.entries()) {
    auto [r, c] = p;
    out.add(r, c, v.re);
    out.add(r + k, c + k, v.re);
    out.add(r, c + k, -v.im);
    out.add(r + k, c, v.im);
  }
  return out;
}

std::vector<QCMat> map_all(const std::vector<QCMat>& xs, const std::function<QCMat(const QCMat&)>& f) {
  std::vector<QCMat> out;
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

std::vector<QCMat> concat(std::vector<QCMat> a, const std::vector<QCMat>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

QCMat trace_padded(const QCMat& x) {
  // diag(X, -tr X)
  const int n = x.size();
  QCMat out = at(x, n + 1, 0);
  Rational re = 0, im = 0;
  for (const auto& [p, v] : x.entries())
    if (p.first == p.second) {
      re += v.re;
      im += v.im;
    }
  if (sgn(re) != 0 || sgn(im) != 0) out.add(n, n, -re, -im);
  return out;
}

QCMat scalar_i(int n, const Rational& s = 1) {
  QCMat m(n);
  for (int k = 0; k < n; ++k) m.add(k, k, 0, s);
  return m;
}

QMatrix stacked_identity(int rows, int cols, int row_offset) {
  QMatrix m(rows, cols);
  for (int i = 0; i < cols; ++i) m(row_offset + i, i) = 1;
  return m;
}

AlgebraPtr sum_of(const std::vector<AlgebraPtr>& parts) {
  if (parts.size() == 1) return parts.front();
  return std::make_shared<const LieAlgebra>(direct_sum(parts));
}

struct Builder {
  std::string name;
  Params params;

  Chain plain(Embedding h_in_g) const {
    h_in_g.name = name;
    h_in_g.params = params;
    return Chain{name, params, std::move(h_in_g), std::nullopt, std::nullopt};
  }
  Chain chain(Embedding h_in_k, Embedding k_in_g, Embedding h_in_g) const {
    h_in_g.name = name;
    h_in_g.params = params;
    Chain c{name, params, std::move(h_in_g), std::move(h_in_k), std::move(k_in_g)};
    double mm = chain_mismatch(c);
    if (mm > 1e-10)
      throw InvariantViolation("chain '" + name + "': composite differs from direct embedding by " +
                               std::to_string(mm));
    return c;
  }
};

void require(bool ok, const std::string& name, const std::string& what) {
  if (!ok) throw InputError("embedding '" + name + "': " + what);
}

// ---- float constructions -------------------------------------------------

std::vector<CMat> conjugate_all(const std::vector<CMat>& xs, const CMat& w) {
  std::vector<CMat> out;
  for (const auto& x : xs) out.push_back(w.adjoint() * x * w);
  return out;
}

// Spin-(dim-1)/2 rep carried into the sp(dim/2) convention by a signed permutation
// that turns the invariant antisymmetric form into J = [[0, I], [-I, 0]].
std::vector<CMat> symplectic_form_of(const std::vector<CMat>& rho, const ClassicalAlgebra& sp) {
  const int dim = static_cast<int>(rho.front().rows());
  const int n = dim / 2;
  for (int flip : {1, -1}) {
    CMat u = CMat::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
      u(k, k) = 1;
      u(dim - 1 - k, k + n) = (k % 2 == 0 ? 1.0 : -1.0) * flip;
    }
    auto out = conjugate_all(rho, u);
    bool fits = true;
    for (const auto& x : out) {
      double res = 0;
      sp.realization.coords(x, &res);
      fits = fits && res <= 1e-12 * std::max(1.0, x.norm());
    }
    if (fits) return out;
  }
  throw InvariantViolation("spin representation does not preserve the symplectic form");
}

// Integer-spin rep conjugated to real antisymmetric matrices.
std::vector<CMat> real_form_of(const std::vector<CMat>& rho) {
  const int dim = static_cast<int>(rho.front().rows());
  const int j = (dim - 1) / 2;
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> i(0, 1);
  for (int flip : {1, -1})
    for (std::complex<double> c0 : {std::complex<double>(1, 0), i}) {
      CMat w = CMat::Zero(dim, dim);
      int col = 0;
      for (int m = j; m >= 1; --m) {
        int k = j - m, kk = j + m;
        double s = ((m % 2 == 0) ? 1.0 : -1.0) * flip;
        w(k, col) = r;
        w(kk, col) = s * r;
        ++col;
        w(k, col) = i * r;
        w(kk, col) = -i * s * r;
        ++col;
      }
      w(j, col) = c0;
      auto out = conjugate_all(rho, w);
      bool real = true;
      for (const auto& x : out) real = real && x.imag().norm() <= 1e-12 * std::max(1.0, x.norm());
      if (real) {
        for (auto& x : out) x = x.real().cast<std::complex<double>>();
        return out;
      }
    }
  throw InvariantViolation("integer spin representation has no real form in the tried bases");
}

// ---- entries --------------------------------------------------------------

Chain diag_copies(const Builder& b, const std::string& f, int copies) {
  auto fa = algebra_by_name(f);
  std::vector<AlgebraPtr> parts(copies, fa);
  auto g = sum_of(parts);
  const int d = fa->dim();
  QMatrix m(d * copies, d);
  for (int c = 0; c < copies; ++c)
    for (int i = 0; i < d; ++i) m(c * d + i, i) = 1;
  return b.plain(make_embedding(fa, g, m, b.name));
}

Chain u_in_so(const Builder& b, int k) {
  require(k >= 1 && 2 * k <= 16, b.name, "k must satisfy 1 <= k <= 8");
  const auto& u = classical("u", k);
  return b.plain(embedding_from_images(u.algebra, classical("so", 2 * k), map_all(u_basis(k), real_form), b.name));
}

Chain so_in_so(const Builder& b, int n) {
  require(n >= 2 && n + 1 <= 16, b.name, "rank out of range");
  const auto& s = classical("so", n);
  return b.plain(embedding_from_images(s.algebra, classical("so", n + 1), at(so_basis(n), n + 1, 0), b.name));
}

// h ⊂ so(2k) ⊂ so(2k+1) with h given by complex k x k matrices.
Chain complex_in_so_in_so(const Builder& b, const ClassicalAlgebra& h, int k) {
  const auto& so2k = classical("so", 2 * k);
  const auto& g = classical("so", 2 * k + 1);
  auto himg = map_all(h.realization.basis(), real_form);
  auto h_in_k = embedding_from_images(h.algebra, so2k, himg, "h in so(2k)");
  auto k_in_g = embedding_from_images(so2k.algebra, g, at(so_basis(2 * k), 2 * k + 1, 0), "so(2k) in so(2k+1)");
  auto h_in_g = embedding_from_images(h.algebra, g, at(himg, 2 * k + 1, 0), b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain su_in_u_in_su(const Builder& b, int n) {
  require(n >= 2 && n + 1 <= 8, b.name, "n must satisfy 2 <= n <= 7");
  const auto& su = classical("su", n);
  const auto& u = classical("u", n);
  const auto& g = classical("su", n + 1);
  auto h_in_k = make_embedding(su.algebra, u.algebra, stacked_identity(u.algebra->dim(), su.algebra->dim(), 0),
                               "su(n) in u(n)");
  auto k_in_g = embedding_from_images(u.algebra, g, map_all(u_basis(n), trace_padded), "u(n) in su(n+1)");
  auto h_in_g = embedding_from_images(su.algebra, g, at(su_basis(n), n + 1, 0), b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain su_su_in_su(const Builder& b, int m, int n) {
  require(m >= 2 && n >= 1 && m + n <= 8, b.name, "need m >= 2, n >= 1, m + n <= 8");
  const int s = m + n;
  const auto& g = classical("su", s);
  std::vector<AlgebraPtr> hparts{classical_algebra("su", m)};
  std::vector<QCMat> himg = at(su_basis(m), s, 0);
  if (n >= 2) {
    hparts.push_back(classical_algebra("su", n));
    himg = concat(himg, at(su_basis(n), s, m));
  }
  auto h = sum_of(hparts);
  std::vector<AlgebraPtr> kparts = hparts;
  kparts.push_back(classical_algebra("torus", 1));
  auto k = sum_of(kparts);
  QCMat center(s);
  for (int i = 0; i < m; ++i) center.add(i, i, 0, n);
  for (int i = m; i < s; ++i) center.add(i, i, 0, -m);
  auto kimg = himg;
  kimg.push_back(center);
  auto h_in_k = make_embedding(h, k, stacked_identity(k->dim(), h->dim(), 0), "h in s(u(m)u(n))");
  auto k_in_g = embedding_from_images(k, g, kimg, "s(u(m)u(n)) in su(m+n)");
  auto h_in_g = embedding_from_images(h, g, himg, b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain sp_in_u_in_su(const Builder& b, int n, bool with_u1) {
  require(n >= 1 && 2 * n + 1 <= 8, b.name, "n must satisfy 1 <= n <= 3");
  const int s = 2 * n + 1;
  const auto& sp = classical("sp", n);
  const auto& u = classical("u", 2 * n);
  const auto& g = classical("su", s);
  AlgebraPtr h = with_u1 ? sum_of({sp.algebra, classical_algebra("torus", 1)}) : sp.algebra;
  auto in_k = sp_basis(n);
  auto himg = at(sp_basis(n), s, 0);
  if (with_u1) {
    in_k.push_back(scalar_i(2 * n));
    QCMat c = scalar_i(2 * n);
    c = at(c, s, 0);
    c.add(2 * n, 2 * n, 0, -2 * n);
    himg.push_back(c);
  }
  auto h_in_k = embedding_from_images(h, u, in_k, "h in u(2n)");
  auto k_in_g = embedding_from_images(u.algebra, g, map_all(u_basis(2 * n), trace_padded), "u(2n) in su(2n+1)");
  auto h_in_g = embedding_from_images(h, g, himg, b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain sp_sp1_in_sp(const Builder& b, int n, bool with_u1) {
  require(n >= 1 && n + 1 <= 7, b.name, "n must satisfy 1 <= n <= 6");
  const int s = 2 * (n + 1);
  const auto& g = classical("sp", n + 1);
  auto spn = classical_algebra("sp", n);
  auto sp1 = classical_algebra("sp", 1);
  std::vector<int> big(2 * n);
  for (int i = 0; i < 2 * n; ++i) big[i] = i < n ? i : i + 1;
  std::vector<int> small{n, 2 * n + 1};
  auto spn_img = map_all(sp_basis(n), [&](const QCMat& x) { return place(x, s, big); });
  auto sp1_img = map_all(sp_basis(1), [&](const QCMat& x) { return place(x, s, small); });
  auto k = sum_of({spn, sp1});
  auto k_in_g = embedding_from_images(k, g, concat(spn_img, sp1_img), "sp(n)+sp(1) in sp(n+1)");
  AlgebraPtr h = with_u1 ? sum_of({spn, classical_algebra("torus", 1)}) : spn;
  QMatrix hk(k->dim(), h->dim());
  for (int i = 0; i < spn->dim(); ++i) hk(i, i) = 1;
  auto himg = spn_img;
  if (with_u1) {
    hk(spn->dim(), spn->dim()) = 1;  // first sp(1) basis vector i E_00
    himg.push_back(sp1_img.front());
  }
  auto h_in_k = make_embedding(h, k, hk, "h in sp(n)+sp(1)");
  auto h_in_g = embedding_from_images(h, g, himg, b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain g2_in_so7_in_so8(const Builder& b) {
  const auto& g2 = g2_algebra();
  const auto& so7 = classical("so", 7);
  const auto& so8 = classical("so", 8);
  auto h_in_k = embedding_from_images(g2.algebra, so7, g2.realization.basis(), "g2 in so(7)");
  auto k_in_g = embedding_from_images(so7.algebra, so8, at(so_basis(7), 8, 1), "so(7) in so(8)");
  auto h_in_g = embedding_from_images(g2.algebra, so8, at(g2.realization.basis(), 8, 1), b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain spin7_so_in_so(const Builder& b, int p) {
  require(p >= 1 && 8 + p <= 16, b.name, "p must satisfy 1 <= p <= 8");
  const int s = 8 + p;
  const auto& g = classical("so", s);
  auto so7 = classical_algebra("so", 7);
  auto so8 = classical_algebra("so", 8);
  auto spin = spin7_images();
  std::vector<AlgebraPtr> hparts{so7}, kparts{so8};
  auto himg = at(spin, s, 0);
  auto kimg = at(so_basis(8), s, 0);
  if (p >= 2) {
    hparts.push_back(classical_algebra("so", p));
    kparts.push_back(classical_algebra("so", p));
    himg = concat(himg, at(so_basis(p), s, 8));
    kimg = concat(kimg, at(so_basis(p), s, 8));
  }
  auto h = sum_of(hparts);
  auto k = sum_of(kparts);
  auto spin_in_so8 = embedding_from_images(so7, classical("so", 8), spin, "spin(7) in so(8)");
  QMatrix hk(k->dim(), h->dim());
  for (int r = 0; r < 28; ++r)
    for (int c = 0; c < 21; ++c) hk(r, c) = (*spin_in_so8.exact)(r, c);
  for (int i = 0; i < h->dim() - 21; ++i) hk(28 + i, 21 + i) = 1;
  auto h_in_k = make_embedding(h, k, hk, "h in k");
  auto k_in_g = embedding_from_images(k, g, kimg, "k in g");
  auto h_in_g = embedding_from_images(h, g, himg, b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain so2_g2_in_so9(const Builder& b) {
  const auto& g = classical("so", 9);
  auto so2 = classical_algebra("so", 2);
  const auto& g2 = g2_algebra();
  auto so7 = classical("so", 7);
  auto h = sum_of({so2, g2.algebra});
  auto k = sum_of({so2, so7.algebra});
  auto g2_in_so7 = embedding_from_images(g2.algebra, so7, g2.realization.basis(), "g2 in so(7)");
  QMatrix hk(k->dim(), h->dim());
  hk(0, 0) = 1;
  for (int r = 0; r < 21; ++r)
    for (int c = 0; c < 14; ++c) hk(1 + r, 1 + c) = (*g2_in_so7.exact)(r, c);
  auto h_in_k = make_embedding(h, k, hk, "so(2)+g2 in so(2)+so(7)");
  auto k_in_g = embedding_from_images(k, g, concat(at(so_basis(2), 9, 0), at(so_basis(7), 9, 2)), "k in so(9)");
  auto h_in_g = embedding_from_images(h, g, concat(at(so_basis(2), 9, 0), at(g2.realization.basis(), 9, 2)), b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

// A (x) I + I (x) B on R^m (x) R^n, index r*n + s.
Chain so_so_in_so(const Builder& b, int m, int n) {
  require(m >= 2 && n >= 2 && m * n <= 16, b.name, "need m, n >= 2 and m*n <= 16");
  const int s = m * n;
  const auto& g = classical("so", s);
  auto h = sum_of({classical_algebra("so", m), classical_algebra("so", n)});
  std::vector<QCMat> himg;
  for (const auto& a : so_basis(m)) {
    QCMat x(s);
    for (const auto& [p, v] : a.entries())
      for (int t = 0; t < n; ++t) x.add(p.first * n + t, p.second * n + t, v.re, v.im);
    himg.push_back(x);
  }
  for (const auto& bb : so_basis(n)) {
    QCMat x(s);
    for (const auto& [p, v] : bb.entries())
      for (int r = 0; r < m; ++r) x.add(r * n + p.first, r * n + p.second, v.re, v.im);
    himg.push_back(x);
  }
  return b.plain(embedding_from_images(h, g, himg, b.name));
}

// R^m (x) H^n inside H^{mn}: sp(n) matrices act on C^{2n}; index (r, s) goes to
// r*n + s for s < n and mn + r*n + (s - n) otherwise, so J_{mn} = I_m (x) J_n.
std::vector<QCMat> tensor_sp_images(const std::vector<QCMat>& left, int m, const std::vector<QCMat>& right, int n) {
  const int N = m * n;
  auto idx = [&](int r, int s) { return s < n ? r * n + s : N + r * n + (s - n); };
  std::vector<QCMat> out;
  for (const auto& a : left) {
    QCMat x(2 * N);
    for (const auto& [p, v] : a.entries())
      for (int t = 0; t < 2 * n; ++t) x.add(idx(p.first, t), idx(p.second, t), v.re, v.im);
    out.push_back(x);
  }
  for (const auto& y : right) {
    QCMat x(2 * N);
    for (const auto& [p, v] : y.entries())
      for (int r = 0; r < m; ++r) x.add(idx(r, p.first), idx(r, p.second), v.re, v.im);
    out.push_back(x);
  }
  return out;
}

Chain so_sp_in_sp(const Builder& b, int m, int n) {
  require(m >= 2 && n >= 1 && m * n <= 7, b.name, "need m >= 2, n >= 1, m*n <= 7");
  const auto& g = classical("sp", m * n);
  auto h = sum_of({classical_algebra("so", m), classical_algebra("sp", n)});
  return b.plain(embedding_from_images(h, g, tensor_sp_images(so_basis(m), m, sp_basis(n), n), b.name));
}

Chain g2_sp_in_sp(const Builder& b, int n) {
  require(n >= 1 && 7 * n <= 7, b.name, "only n = 1 is within the sp rank cap");
  const auto& g = classical("sp", 7 * n);
  const auto& g2 = g2_algebra();
  auto so7 = classical("so", 7);
  auto spn = classical_algebra("sp", n);
  auto h = sum_of({g2.algebra, spn});
  auto k = sum_of({so7.algebra, spn});
  auto g2_in_so7 = embedding_from_images(g2.algebra, so7, g2.realization.basis(), "g2 in so(7)");
  QMatrix hk(k->dim(), h->dim());
  for (int r = 0; r < 21; ++r)
    for (int c = 0; c < 14; ++c) hk(r, c) = (*g2_in_so7.exact)(r, c);
  for (int i = 0; i < spn->dim(); ++i) hk(21 + i, 14 + i) = 1;
  auto h_in_k = make_embedding(h, k, hk, "g2+sp(n) in so(7)+sp(n)");
  auto k_in_g = embedding_from_images(k, g, tensor_sp_images(so_basis(7), 7, sp_basis(n), n), "k in sp(7n)");
  auto h_in_g = embedding_from_images(h, g, tensor_sp_images(g2.realization.basis(), 7, sp_basis(n), n), b.name);
  return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
}

Chain principal_su2_in_sp(const Builder& b, int n) {
  require(n >= 1 && n <= 7, b.name, "n must satisfy 1 <= n <= 7");
  const auto& sp = classical("sp", n);
  auto images = symplectic_form_of(spin_representation(2 * n), sp);
  return b.plain(embedding_from_images(classical_algebra("su", 2), sp, images, b.name));
}

Chain principal_su2_in_su(const Builder& b, int n) {
  require(n >= 2 && n <= 8, b.name, "n must satisfy 2 <= n <= 8");
  return b.plain(embedding_from_images(classical_algebra("su", 2), classical("su", n), spin_representation(n), b.name));
}

Chain principal_so3_in_so(const Builder& b, int n) {
  require(n >= 3 && n % 2 == 1 && n <= 15, b.name, "n must be odd with 3 <= n <= 15");
  auto images = real_form_of(spin_representation(n));
  return b.plain(embedding_from_images(classical_algebra("su", 2), classical("so", n), images, b.name));
}

// Small non-simple examples, one per structural case.
Chain so2so2_in_so3so3(const Builder& b) {
  Builder inner{"so(2) in so(3)", {}};
  auto e = so_in_so(inner, 2).h_in_g;
  auto s = direct_sum_embedding({e, e}, b.name);
  return b.plain(std::move(s));
}

Chain diag2_so2_in_so3cubed(const Builder& b) {
  auto so3 = classical_algebra("so", 3);
  auto h = sum_of({so3, classical_algebra("so", 2)});
  auto g = sum_of({so3, so3, so3});
  QMatrix m(9, 4);
  for (int i = 0; i < 3; ++i) m(i, i) = m(3 + i, i) = 1;
  m(6, 3) = 1;  // so(2) = span(E_01 - E_10) in the third factor
  return b.plain(make_embedding(h, g, m, b.name));
}

Chain twisted_so3(const Builder& b) {
  auto so3 = classical_algebra("so", 3);
  const auto& su3 = classical("su", 3);
  auto g = sum_of({su3.algebra, so3});
  QMatrix m(g->dim(), 3);
  auto so3_basis = so_basis(3);
  for (int c = 0; c < 3; ++c) {
    auto x = su3.realization.coords(so3_basis[c]);
    for (int r = 0; r < 8; ++r) m(r, c) = (*x)[r];
    m(8 + c, c) = 1;
  }
  return b.plain(make_embedding(so3, g, m, b.name));
}

Chain twisted_so2(const Builder& b) {
  auto t = classical_algebra("torus", 1);
  auto g = sum_of({classical_algebra("so", 3), t});
  QMatrix m(4, 1);
  m(0, 0) = 1;
  m(3, 0) = 1;
  return b.plain(make_embedding(t, g, m, b.name));
}

Chain trivial_in_torus(const Builder& b) {
  StructureTensor t;
  t.dim = 0;
  auto zero = make_algebra(std::move(t), "0");
  return b.plain(make_embedding(zero, classical_algebra("torus", 2), QMatrix(2, 0), b.name));
}

Chain so2_in_r_so3(const Builder& b) {
  auto g = sum_of({classical_algebra("torus", 1), classical_algebra("so", 3)});
  QMatrix m(4, 1);
  m(1, 0) = 1;
  return b.plain(make_embedding(classical_algebra("so", 2), g, m, b.name));
}

struct Entry {
  RegistryInfo info;
  std::function<Chain(const Builder&)> build;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = [] {
    auto P = [](const Params& p, const std::string& k, int d) { return param_int(p, k, d); };
    std::vector<Entry> v;
    auto add = [&](std::string name, std::string summary, Params defaults, bool exact,
                   std::function<Chain(const Builder&)> f) {
      v.push_back({{std::move(name), std::move(summary), std::move(defaults), exact}, std::move(f)});
    };
    add("diag_3(f)", "f -> f+f+f, X -> (X,X,X)", {{"f", "so(3)"}}, true, [](const Builder& b) {
      auto it = b.params.find("f");
      return diag_copies(b, it == b.params.end() ? "so(3)" : it->second, 3);
    });
    add("u(k)_in_so(2k)", "A+iB -> [[A,-B],[B,A]]", {{"k", "2"}}, true,
        [P](const Builder& b) { return u_in_so(b, P(b.params, "k", 2)); });
    add("so(2k)_in_so(2k+1)", "upper-left block", {{"k", "2"}}, true,
        [P](const Builder& b) { return so_in_so(b, 2 * P(b.params, "k", 2)); });
    add("u(k)_in_so(2k)_in_so(2k+1)", "u(k) in so(2k) in so(2k+1), k >= 2", {{"k", "2"}}, true,
        [P](const Builder& b) {
          int k = P(b.params, "k", 2);
          require(k >= 1 && 2 * k + 1 <= 16, b.name, "k must satisfy 1 <= k <= 7");
          return complex_in_so_in_so(b, classical("u", k), k);
        });
    add("su(2n)_in_so(4n)_in_so(4n+1)", "su(2n) in u(2n) in so(4n) in so(4n+1)", {{"n", "1"}}, true,
        [P](const Builder& b) {
          int n = P(b.params, "n", 1);
          require(n >= 1 && 4 * n + 1 <= 16, b.name, "n must satisfy 1 <= n <= 3");
          return complex_in_so_in_so(b, classical("su", 2 * n), 2 * n);
        });
    add("u(2r+1)_in_so(4r+2)", "u(2r+1) -> so(4r+2) by the real form", {{"r", "2"}}, true,
        [P](const Builder& b) { return u_in_so(b, 2 * P(b.params, "r", 2) + 1); });
    add("su(2r+1)_in_u(2r+1)_in_so(4r+2)", "su(2r+1) in u(2r+1) in so(4r+2)", {{"r", "2"}}, true,
        [P](const Builder& b) {
          int r = P(b.params, "r", 2);
          int k = 2 * r + 1;
          require(r >= 1 && 2 * k <= 16, b.name, "r must satisfy 1 <= r <= 3");
          const auto& su = classical("su", k);
          const auto& u = classical("u", k);
          const auto& g = classical("so", 2 * k);
          auto h_in_k = make_embedding(su.algebra, u.algebra, stacked_identity(u.algebra->dim(), su.algebra->dim(), 0),
                                       "su in u");
          auto k_in_g = embedding_from_images(u.algebra, g, map_all(u_basis(k), real_form), "u in so");
          auto h_in_g = embedding_from_images(su.algebra, g, map_all(su_basis(k), real_form), b.name);
          return b.chain(std::move(h_in_k), std::move(k_in_g), std::move(h_in_g));
        });
    add("su(n)_in_u(n)_in_su(n+1)", "su(n) in u(n) = s(u(n)u(1)) in su(n+1)", {{"n", "2"}}, true,
        [P](const Builder& b) { return su_in_u_in_su(b, P(b.params, "n", 2)); });
    add("su(m)xsu(n)_in_su(m+n)", "su(m)+su(n) in s(u(m)u(n)) in su(m+n); su(1) = 0", {{"m", "3"}, {"n", "2"}}, true,
        [P](const Builder& b) { return su_su_in_su(b, P(b.params, "m", 3), P(b.params, "n", 2)); });
    add("sp(n)u(1)_in_su(2n+1)", "sp(n)+u(1) in s(u(2n)u(1)) in su(2n+1)", {{"n", "2"}}, true,
        [P](const Builder& b) { return sp_in_u_in_su(b, P(b.params, "n", 2), true); });
    add("sp(n)_in_u(2n)_in_su(2n+1)", "sp(n) in s(u(2n)u(1)) in su(2n+1)", {{"n", "2"}}, true,
        [P](const Builder& b) { return sp_in_u_in_su(b, P(b.params, "n", 2), false); });
    add("sp(n)_and_sp(1)_in_sp(n+1)", "sp(n)+u(1) in sp(n)+sp(1) in sp(n+1)", {{"n", "1"}}, true,
        [P](const Builder& b) { return sp_sp1_in_sp(b, P(b.params, "n", 1), true); });
    add("sp(n)_in_sp(n)xsp(1)_in_sp(n+1)", "sp(n) in sp(n)+sp(1) in sp(n+1)", {{"n", "1"}}, true,
        [P](const Builder& b) { return sp_sp1_in_sp(b, P(b.params, "n", 1), false); });
    add("g2_in_so(7)_in_so(8)", "octonion derivations in so(Im O) in so(O)", {}, true,
        [](const Builder& b) { return g2_in_so7_in_so8(b); });
    add("spin7_in_so(8)_in_so(9)", "so(7) -> so(8) by E_ij - E_ji -> +-1/2 L_i L_j, then so(8) in so(9)", {}, true,
        [](const Builder& b) { return spin7_so_in_so(b, 1); });
    add("spin7xso(p)_in_so(8)xso(p)_in_so(8+p)", "spin(7)+so(p) in so(8)+so(p) in so(8+p)", {{"p", "2"}}, true,
        [P](const Builder& b) {
          int p = P(b.params, "p", 2);
          require(p >= 2, b.name, "p must be at least 2");
          return spin7_so_in_so(b, p);
        });
    add("so(2)xg2_in_so(2)xso(7)_in_so(9)", "so(2)+g2 in so(2)+so(7) in so(9)", {}, true,
        [](const Builder& b) { return so2_g2_in_so9(b); });
    add("so(m)xso(n)_in_so(mn)", "tensor product R^m (x) R^n", {{"m", "3"}, {"n", "3"}}, true,
        [P](const Builder& b) { return so_so_in_so(b, P(b.params, "m", 3), P(b.params, "n", 3)); });
    add("so(m)xsp(n)_in_sp(mn)", "tensor product R^m (x) H^n", {{"m", "3"}, {"n", "2"}}, true,
        [P](const Builder& b) { return so_sp_in_sp(b, P(b.params, "m", 3), P(b.params, "n", 2)); });
    add("g2xsp(n)_in_so(7)xsp(n)_in_sp(7n)", "g2+sp(n) in so(7)+sp(n) in sp(7n)", {{"n", "1"}}, true,
        [P](const Builder& b) { return g2_sp_in_sp(b, P(b.params, "n", 1)); });
    add("principal_su2_in_sp(3)", "irreducible 6-dim symplectic representation of su(2)", {{"n", "3"}}, false,
        [P](const Builder& b) { return principal_su2_in_sp(b, P(b.params, "n", 3)); });
    add("principal_su2_in_su(n)", "irreducible n-dim representation of su(2)", {{"n", "4"}}, false,
        [P](const Builder& b) { return principal_su2_in_su(b, P(b.params, "n", 4)); });
    add("principal_so3_in_so(n)", "irreducible real n-dim representation of so(3), n odd", {{"n", "7"}}, false,
        [P](const Builder& b) { return principal_so3_in_so(b, P(b.params, "n", 7)); });
    add("so(2)xso(2)_in_so(3)xso(3)", "product of two so(2) in so(3)", {}, true,
        [](const Builder& b) { return so2so2_in_so3so3(b); });
    add("diag_2(so(3))xso(2)_in_so(3)^3", "(X,X,0) + (0,0,Y), Y in so(2)", {}, true,
        [](const Builder& b) { return diag2_so2_in_so3cubed(b); });
    add("twisted_so(3)_in_su(3)xso(3)", "X -> (X, X) with so(3) as real matrices in su(3)", {}, true,
        [](const Builder& b) { return twisted_so3(b); });
    add("twisted_so(2)_in_so(3)xR", "t -> (t E_01, t)", {}, true, [](const Builder& b) { return twisted_so2(b); });
    add("trivial_in_torus(2)", "0 in R^2", {}, true, [](const Builder& b) { return trivial_in_torus(b); });
    add("so(2)_in_Rxso(3)", "so(2) in the so(3) summand of R+so(3)", {}, true,
        [](const Builder& b) { return so2_in_r_so3(b); });
    return v;
  }();
  return list;
}

}  // namespace

int param_int(const Params& p, const std::string& key, int fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + "='" + it->second + "' is not an integer");
  }
}

std::vector<Eigen::MatrixXcd> spin_representation(int dim) {
  if (dim < 1) throw InputError("spin representation needs dim >= 1");
  const double j = (dim - 1) / 2.0;
  CMat jz = CMat::Zero(dim, dim), jp = CMat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double m = j - k;
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const std::complex<double> i(0, 1);
  CMat jx = (jp + jp.transpose()) / 2.0;
  CMat jy = (jp - jp.transpose()) / (2.0 * i);
  return {2.0 * i * jz, 2.0 * i * jy, 2.0 * i * jx};
}

const ClassicalAlgebra& g2_algebra() {
  static std::once_flag once;
  static ClassicalAlgebra g2;
  std::call_once(once, [] {
    Realization r(7, g2_derivation_basis());
    g2.algebra = make_algebra(structure_from_realization(r), "g2");
    g2.realization = std::move(r);
  });
  return g2;
}

AlgebraPtr algebra_by_name(const std::string& text) {
  if (text == "g2") return g2_algebra().algebra;
  static const std::regex re(R"(\s*(so|su|sp|u|torus)\s*\(\s*(\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw InputError("cannot parse algebra name '" + text + "' (expected e.g. so(3), su(2), sp(1), torus(2), g2)");
  return classical_algebra(m[1].str(), std::stoi(m[2].str()));
}

const std::vector<RegistryInfo>& embedding_registry() {
  static const std::vector<RegistryInfo> infos = [] {
    std::vector<RegistryInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

Chain named_embedding(const std::string& name, const Params& params) {
  for (const auto& e : entries())
    if (e.info.name == name) {
      Params merged = e.info.defaults;
      for (const auto& [k, v] : params) {
        if (!merged.count(k)) throw InputError("embedding '" + name + "' has no parameter '" + k + "'");
        merged[k] = v;
      }
      return e.build(Builder{name, merged});
    }
  throw InputError("unknown embedding '" + name + "' (see `orbitcheck zoo --registry`)");
}

double chain_mismatch(const Chain& c) {
  if (!c.has_k()) return 0.0;
  Embedding comp = compose(*c.k_in_g, *c.h_in_k);
  if (comp.exact && c.h_in_g.exact) {
    QMatrix d = *comp.exact;
    for (int r = 0; r < d.rows(); ++r)
      for (int col = 0; col < d.cols(); ++col) d(r, col) -= (*c.h_in_g.exact)(r, col);
    return d.is_zero() ? 0.0 : d.to_double().cwiseAbs().maxCoeff();
  }
  return (comp.matrix - c.h_in_g.matrix).cwiseAbs().maxCoeff();
}

}  // namespace orbitcheck
