#include "orbitcheck/commutant.hpp"

#include <algorithm>
#include <numeric>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/random.hpp"

namespace orbitcheck {

namespace {

// Families below this norm are roundoff around the zero action.
constexpr double kNegligibleOps = 1e-12;

double ops_scale(const std::vector<Matrix>& ops) {
  double s = 0.0;
  for (const auto& r : ops) s = std::max(s, r.norm());
  return s <= kNegligibleOps ? 0.0 : s;
}

Matrix random_combination(const std::vector<Matrix>& ops, Rng& rng, double scale) {
  Vector c = gaussian_vector(rng, static_cast<Eigen::Index>(ops.size()));
  Matrix m = Matrix::Zero(ops.front().rows(), ops.front().cols());
  for (size_t i = 0; i < ops.size(); ++i) m += c(static_cast<Eigen::Index>(i)) * ops[i];
  return m / scale;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

// Combinations of candidates that commute with r.
std::vector<Matrix> filter_by(const std::vector<Matrix>& cand, const Matrix& r) {
  if (cand.empty()) return {};
  const auto d = r.rows();
  Matrix stacked(d * d, static_cast<Eigen::Index>(cand.size()));
  for (size_t i = 0; i < cand.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = vec(cand[i] * r - r * cand[i]);
  Matrix k = nullspace(stacked, 1e-9);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    Matrix t = Matrix::Zero(d, d);
    for (size_t i = 0; i < cand.size(); ++i) t += k(static_cast<Eigen::Index>(i), c) * cand[i];
    out.push_back(t);
  }
  return out;
}

}  // namespace

Commutant commutant(const std::vector<Matrix>& ops, std::uint64_t seed) {
  Commutant out;
  if (ops.empty()) return out;
  const Eigen::Index d = ops.front().rows();
  if (d == 0) return out;
  const double scale = ops_scale(ops);
  if (scale == 0.0) {
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(d, d);
        e(i, j) = 1;
        out.basis.push_back(e);
      }
    return out;
  }
  Rng rng(seed);
  Matrix m = random_combination(ops, rng, scale);

  // T commutes with M, hence with M^2, so T preserves each eigenspace of M^2.
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(m * m));
  const Vector& ev = es.eigenvalues();
  const double spread = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  auto groups = cluster_sorted(ev, 1e-7 * spread + 1e-14);
  std::vector<Matrix> cand;
  for (const auto& g : groups) {
    const auto k = static_cast<Eigen::Index>(g.size());
    Matrix v(d, k);
    for (Eigen::Index c = 0; c < k; ++c) v.col(c) = es.eigenvectors().col(g[c]);
    Matrix mg = v.transpose() * m * v;
    Matrix id = Matrix::Identity(k, k);
    Matrix kron(k * k, k * k);
    // vec(X Mg - Mg X) = (Mg^T (x) I - I (x) Mg) vec(X)
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) kron.block(a * k, b * k, k, k) = mg(b, a) * id - (a == b ? mg : Matrix::Zero(k, k));
    Matrix ker = nullspace(kron, 1e-9);
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
      Matrix x = Eigen::Map<const Matrix>(ker.col(c).data(), k, k);
      cand.push_back(v * x * v.transpose());
    }
  }
  cand = filter_by(cand, random_combination(ops, rng, scale));

  // Remaining candidates against every operator, through the Gram matrix.
  const auto n = static_cast<Eigen::Index>(cand.size());
  if (n > 0) {
    Matrix gram = Matrix::Zero(n, n);
    for (const auto& r : ops) {
      Matrix cols(d * d, n);
      for (Eigen::Index i = 0; i < n; ++i) cols.col(i) = vec(cand[i] * r - r * cand[i]) / scale;
      gram += cols.transpose() * cols;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> gs(gram);
    std::vector<Matrix> kept;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (gs.eigenvalues()(c) > 1e-14) continue;
      Matrix t = Matrix::Zero(d, d);
      for (Eigen::Index i = 0; i < n; ++i) t += gs.eigenvectors()(i, c) * cand[i];
      kept.push_back(t);
    }
    out.basis = orthonormalize_matrices(kept, 1e-9);
  }
  for (const auto& t : out.basis)
    for (const auto& r : ops) out.residual = std::max(out.residual, (t * r - r * t).norm() / scale);
  return out;
}

std::vector<Matrix> symmetric_part(const Commutant& c) {
  std::vector<Matrix> sym;
  for (const auto& t : c.basis) sym.push_back((t + t.transpose()) / 2);
  return orthonormalize_matrices(sym, 1e-8);
}

std::vector<Matrix> restrict_ops(const std::vector<Matrix>& ops, const Matrix& v) {
  std::vector<Matrix> out;
  for (const auto& r : ops) out.push_back(v.transpose() * r * v);
  return out;
}

bool isomorphic_modules(const Commutant& c, const Matrix& a, const Matrix& b) {
  for (const auto& t : c.basis)
    if ((b.transpose() * t * a).norm() > 1e-7) return true;
  return false;
}

namespace {

int symmetric_dim(const std::vector<Matrix>& ops, int d, std::uint64_t seed) {
  if (d == 0) return 0;
  if (ops.empty()) return d * (d + 1) / 2;
  Commutant c = commutant(ops, seed);
  if (c.basis.empty() && ops_scale(ops) == 0.0) return d * (d + 1) / 2;
  return static_cast<int>(symmetric_part(c).size());
}

}  // namespace

Splitting split_irreducible(const std::vector<Matrix>& ops, int d, std::uint64_t seed, double eig_gap, int attempts) {
  Splitting out;
  if (d == 0) return out;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    Commutant c;
    std::vector<Matrix> sym;
    if (ops.empty() || ops_scale(ops) == 0.0) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Matrix e = Matrix::Zero(d, d);
          e(i, j) = 1;
          c.basis.push_back(e);
        }
    } else {
      c = commutant(ops, s);
    }
    sym = symmetric_part(c);
    if (sym.empty()) throw NumericalFailure("commutant lost the identity operator");
    Rng rng(s ^ 0x5bd1e995ULL);
    Vector coef = gaussian_vector(rng, static_cast<Eigen::Index>(sym.size()));
    Matrix a = Matrix::Zero(d, d);
    for (size_t i = 0; i < sym.size(); ++i) a += coef(static_cast<Eigen::Index>(i)) * sym[i];
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const Vector& ev = es.eigenvalues();
    const double spread = std::max({ev.maxCoeff() - ev.minCoeff(), ev.cwiseAbs().maxCoeff(), 1e-300});
    auto groups = cluster_sorted(ev, eig_gap * spread);

    std::vector<Matrix> mods;
    bool certified = true;
    for (size_t gi = 0; gi < groups.size() && certified; ++gi) {
      const auto& g = groups[gi];
      Matrix v(d, static_cast<Eigen::Index>(g.size()));
      for (size_t k = 0; k < g.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(g[k]);
      int sd = symmetric_dim(restrict_ops(ops, v), static_cast<int>(v.cols()), derive_seed(s, 1000 + gi));
      certified = sd == 1;
      mods.push_back(v);
    }
    if (!certified) continue;

    std::vector<size_t> order(mods.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return mods[x].cols() < mods[y].cols(); });
    for (size_t i : order) out.modules.push_back(mods[i]);
    out.isotypic.assign(out.modules.size(), -1);
    int next = 0;
    for (size_t i = 0; i < out.modules.size(); ++i) {
      if (out.isotypic[i] >= 0) continue;
      out.isotypic[i] = next;
      for (size_t j = i + 1; j < out.modules.size(); ++j)
        if (out.isotypic[j] < 0 && out.modules[i].cols() == out.modules[j].cols() &&
            isomorphic_modules(c, out.modules[i], out.modules[j]))
          out.isotypic[j] = next;
      ++next;
    }
    out.symmetric_commutant_dim = static_cast<int>(sym.size());
    for (const auto& v : out.modules) {
      Matrix p = v * v.transpose();
      Matrix q = Matrix::Identity(d, d) - p;
      for (const auto& r : ops) out.invariance_residual = std::max(out.invariance_residual, (q * r * p).norm());
    }
    return out;
  }
  throw NumericalFailure("could not certify an irreducible splitting after " + std::to_string(attempts) +
                         " random draws");
}

}  // namespace orbitcheck

