#include "orbitcheck/embedding.hpp"

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

namespace {

Matrix pulled_killing(const Embedding& e) {
  const int d = e.domain->dim();
  std::vector<Matrix> ads;
  for (int i = 0; i < d; ++i) ads.push_back(e.codomain->ad(e.matrix.col(i)));
  Matrix k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) k(i, j) = k(j, i) = ads[i].cwiseProduct(ads[j].transpose()).sum();
  return k;
}

}  // namespace

EmbeddingReport check_embedding(const Embedding& e, double tol) {
  EmbeddingReport rep;
  const LieAlgebra& h = *e.domain;
  const LieAlgebra& g = *e.codomain;
  if (e.matrix.rows() != g.dim() || e.matrix.cols() != h.dim())
    throw InputError("embedding '" + e.name + "': matrix is " + std::to_string(e.matrix.rows()) + "x" +
                     std::to_string(e.matrix.cols()) + ", expected " + std::to_string(g.dim()) + "x" +
                     std::to_string(h.dim()));
  const int d = h.dim();
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vector lhs = Vector::Zero(g.dim());
      for (const auto& t : h.row(i, j)) lhs += t.v * e.matrix.col(t.k);
      Vector rhs = g.bracket(Vector(e.matrix.col(i)), Vector(e.matrix.col(j)));
      scale = std::max(scale, rhs.cwiseAbs().maxCoeff());
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  rep.homomorphism_residual = worst / scale;
  bool exact_ok = true;
  if (e.exact && h.exact() && g.exact()) {
    rep.exact_checked = true;
    const QMatrix& m = *e.exact;
    for (int i = 0; i < d && exact_ok; ++i)
      for (int j = i + 1; j < d && exact_ok; ++j) {
        QVector lhs(g.dim());
        for (const auto& t : h.qrow(i, j)) lhs = lhs + t.q * m.column(t.k);
        exact_ok = is_zero(lhs - g.bracket(m.column(i), m.column(j)));
      }
    rep.rank = exact_rank(m);
  } else {
    rep.rank = numerical_rank(e.matrix, 1e-10);
  }
  rep.injective = rep.rank == d;

  if (d > 0) {
    Matrix kp = pulled_killing(e);
    Matrix kh = killing_form(h);
    double nh = kh.squaredNorm();
    if (nh > 0) {
      rep.index = (kp.cwiseProduct(kh)).sum() / nh;
      rep.index_misfit = (kp - rep.index * kh).norm() / std::max(1e-300, kp.norm());
    } else {
      rep.index_misfit = kp.norm() > 0 ? 1.0 : 0.0;
    }
  }
  rep.passed = rep.injective && (rep.exact_checked ? exact_ok : rep.homomorphism_residual <= tol);
  if (rep.exact_checked && !exact_ok) rep.homomorphism_residual = std::max(rep.homomorphism_residual, 1.0);
  return rep;
}

namespace {

Embedding validated(Embedding e) {
  auto rep = check_embedding(e, 1e-10);
  if (!rep.passed)
    throw InvariantViolation("embedding '" + e.name + "' is not an injective homomorphism (residual " +
                             std::to_string(rep.homomorphism_residual) + ", rank " + std::to_string(rep.rank) + " of " +
                             std::to_string(e.domain->dim()) + ")");
  return e;
}

}  // namespace

Embedding make_embedding(AlgebraPtr domain, AlgebraPtr codomain, const QMatrix& map, std::string name, Params params) {
  Embedding e{std::move(domain), std::move(codomain), map.to_double(), map, std::move(name), std::move(params)};
  return validated(std::move(e));
}

Embedding make_embedding(AlgebraPtr domain, AlgebraPtr codomain, const Matrix& map, std::string name, Params params) {
  Embedding e{std::move(domain), std::move(codomain), map, std::nullopt, std::move(name), std::move(params)};
  return validated(std::move(e));
}

Embedding compose(const Embedding& outer, const Embedding& inner) {
  if (inner.codomain->dim() != outer.domain->dim())
    throw InputError("compose: '" + inner.name + "' does not land in the domain of '" + outer.name + "'");
  Embedding e;
  e.domain = inner.domain;
  e.codomain = outer.codomain;
  e.matrix = outer.matrix * inner.matrix;
  if (outer.exact && inner.exact) e.exact = *outer.exact * *inner.exact;
  e.name = outer.name + " o " + inner.name;
  return e;
}

Subspace image(const Embedding& e) {
  if (e.exact) return Subspace(e.codomain, *e.exact);
  return Subspace(e.codomain, e.matrix, 1e-10);
}

Embedding embedding_from_images(AlgebraPtr domain, const ClassicalAlgebra& codomain, const std::vector<QCMat>& images,
                                std::string name, Params params) {
  if (static_cast<int>(images.size()) != domain->dim())
    throw InputError("embedding '" + name + "': image count differs from domain dimension");
  std::vector<QVector> cols;
  for (size_t i = 0; i < images.size(); ++i) {
    auto c = codomain.realization.coords(images[i]);
    if (!c)
      throw InvariantViolation("embedding '" + name + "': image of basis vector " + std::to_string(i) +
                               " is outside " + codomain.algebra->name());
    cols.push_back(std::move(*c));
  }
  return make_embedding(std::move(domain), codomain.algebra, QMatrix::from_columns(cols, codomain.algebra->dim()),
                        std::move(name), std::move(params));
}

Embedding embedding_from_images(AlgebraPtr domain, const ClassicalAlgebra& codomain,
                                const std::vector<Eigen::MatrixXcd>& images, std::string name, Params params) {
  if (static_cast<int>(images.size()) != domain->dim())
    throw InputError("embedding '" + name + "': image count differs from domain dimension");
  Matrix m(codomain.algebra->dim(), domain->dim());
  for (size_t i = 0; i < images.size(); ++i) {
    double res = 0.0;
    m.col(static_cast<Eigen::Index>(i)) = codomain.realization.coords(images[i], &res);
    if (res > 1e-10 * std::max(1.0, images[i].norm()))
      throw InvariantViolation("embedding '" + name + "': image of basis vector " + std::to_string(i) +
                               " is outside " + codomain.algebra->name());
  }
  return make_embedding(std::move(domain), codomain.algebra, m, std::move(name), std::move(params));
}

Embedding direct_sum_embedding(const std::vector<Embedding>& parts, std::string name) {
  if (parts.empty()) throw InputError("direct_sum_embedding: no parts");
  std::vector<AlgebraPtr> doms, cods;
  int rows = 0, cols = 0;
  bool exact = true;
  for (const auto& p : parts) {
    doms.push_back(p.domain);
    cods.push_back(p.codomain);
    rows += p.codomain->dim();
    cols += p.domain->dim();
    exact = exact && p.exact.has_value();
  }
  auto dom = std::make_shared<const LieAlgebra>(direct_sum(doms));
  auto cod = std::make_shared<const LieAlgebra>(direct_sum(cods));
  if (name.empty()) {
    for (const auto& p : parts) name += (name.empty() ? "" : " + ") + p.name;
  }
  if (exact) {
    QMatrix m(rows, cols);
    int r0 = 0, c0 = 0;
    for (const auto& p : parts) {
      for (int r = 0; r < p.exact->rows(); ++r)
        for (int c = 0; c < p.exact->cols(); ++c) m(r0 + r, c0 + c) = (*p.exact)(r, c);
      r0 += p.exact->rows();
      c0 += p.exact->cols();
    }
    return make_embedding(dom, cod, m, name);
  }
  Matrix m = Matrix::Zero(rows, cols);
  int r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    m.block(r0, c0, p.matrix.rows(), p.matrix.cols()) = p.matrix;
    r0 += static_cast<int>(p.matrix.rows());
    c0 += static_cast<int>(p.matrix.cols());
  }
  return make_embedding(dom, cod, m, name);
}

Embedding identity_embedding(const AlgebraPtr& g) {
  return make_embedding(g, g, QMatrix::identity(g->dim()), "id(" + g->name() + ")");
}

}  // namespace orbitcheck
