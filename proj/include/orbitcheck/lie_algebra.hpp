#pragma once

// Real Lie algebras given by structure constants c[i][j][k] = coordinate k of
// [e_i, e_j], together with an ad-invariant inner product.

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/exact.hpp"
#include "orbitcheck/linalg.hpp"

namespace orbitcheck {

struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  Rational q;      // exact value (meaningful when the tensor is exact)
  double v = 0.0;  // float value, always filled
};

/// Sparse rank-3 tensor; entries are taken literally (both orders must be listed).
struct StructureTensor {
  int dim = 0;
  bool exact = true;
  std::vector<StructureEntry> entries;

  void add(int i, int j, int k, const Rational& q);
  void add(int i, int j, int k, double v);  // marks the tensor as float
  /// Adds c[i][j][k] = q and c[j][i][k] = -q.
  void add_antisymmetric(int i, int j, int k, const Rational& q);
};

struct ValidationReport {
  int dim = 0;
  bool exact = false;
  double max_antisymmetry = 0.0;
  double max_jacobi = 0.0;
  std::array<int, 3> antisymmetry_at{-1, -1, -1};
  std::array<int, 3> jacobi_at{-1, -1, -1};
  bool passed = false;
};

/// Checks antisymmetry and the Jacobi identity; entries outside [0, dim) raise InputError.
ValidationReport validate_algebra(const StructureTensor& t, double tol = kDefaultTol);

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

class LieAlgebra {
 public:
  struct Term {
    int k;
    double v;
  };
  struct QTerm {
    int k;
    Rational q;
  };

  /// Validates the tensor (InvariantViolation on failure). Without an explicit inner
  /// product the default is -Killing on [g,g] plus the coordinate dot product on
  /// the center, taken along the derived algebra.
  LieAlgebra(StructureTensor tensor, std::string name, std::optional<QMatrix> exact_inner = std::nullopt,
             std::optional<Matrix> inner = std::nullopt, double tol = kDefaultTol);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool exact() const { return tensor_.exact; }
  const StructureTensor& tensor() const { return tensor_; }

  const std::vector<Term>& row(int i, int j) const { return rows_[static_cast<size_t>(i) * dim_ + j]; }
  const std::vector<QTerm>& qrow(int i, int j) const { return qrows_[static_cast<size_t>(i) * dim_ + j]; }

  Vector bracket(const Vector& x, const Vector& y) const;
  QVector bracket(const QVector& x, const QVector& y) const;
  /// ad(e_i) as a dense matrix: column m holds [e_i, e_m].
  const Matrix& ad_basis(int i) const { return ad_[i]; }
  Matrix ad(const Vector& x) const;

  const Matrix& inner() const { return inner_; }
  const std::optional<QMatrix>& exact_inner() const { return exact_inner_; }
  double dot(const Vector& x, const Vector& y) const { return x.dot(inner_ * y); }
  Rational dot(const QVector& x, const QVector& y) const;
  double norm(const Vector& x) const { return std::sqrt(std::max(0.0, dot(x, x))); }
  /// Upper Cholesky factor U with inner = U^T U; y = U x are orthonormal coordinates.
  const Matrix& chol_upper() const { return chol_upper_; }

 private:
  int dim_ = 0;
  std::string name_;
  StructureTensor tensor_;
  std::vector<std::vector<Term>> rows_;
  std::vector<std::vector<QTerm>> qrows_;
  std::vector<Matrix> ad_;
  Matrix inner_;
  std::optional<QMatrix> exact_inner_;
  Matrix chol_upper_;
};

Matrix killing_form(const LieAlgebra& g);
QMatrix killing_form_exact(const LieAlgebra& g);

/// Center (kernel of ad) as spanning columns; exact when the algebra is exact.
QMatrix center_exact(const LieAlgebra& g);
Matrix center(const LieAlgebra& g, double rel_tol = kDefaultTol);

/// max over basis triples of |<[e_i,e_j],e_k> + <e_j,[e_i,e_k]>|.
double ad_invariance_residual(const LieAlgebra& g);
/// Exact counterpart; true when the identity holds exactly.
bool ad_invariant_exact(const LieAlgebra& g);

/// Block-diagonal sum; the inner product is the block sum of the summands' inner products.
LieAlgebra direct_sum(const std::vector<AlgebraPtr>& summands, std::string name = {});

AlgebraPtr make_algebra(StructureTensor tensor, std::string name, std::optional<QMatrix> exact_inner = std::nullopt,
                        std::optional<Matrix> inner = std::nullopt);

/// Subspace of an algebra. The float basis is orthonormal for the ambient inner
/// product; when built from rational data an exact basis of the same span is kept.
class Subspace {
 public:
  Subspace() = default;
  Subspace(AlgebraPtr ambient, const Matrix& spanning, double rel_tol = kDefaultTol);
  Subspace(AlgebraPtr ambient, const QMatrix& spanning);

  const AlgebraPtr& ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const std::optional<QMatrix>& exact_basis() const { return exact_; }
  bool exact() const { return exact_.has_value(); }

  /// Coefficients in the orthonormal basis (basis^T Q x).
  Vector coords(const Vector& x) const;
  Vector project(const Vector& x) const;
  /// Inner-product norm of x minus its projection.
  double distance(const Vector& x) const;

 private:
  AlgebraPtr ambient_;
  Matrix basis_;
  std::optional<QMatrix> exact_;
};

/// Orthonormalizes spanning columns for the inner product of `g` (returns dependent-free basis).
Matrix q_orthonormalize(const LieAlgebra& g, const Matrix& spanning, double rel_tol = kDefaultTol);

/// Orthocomplement of `inner` inside `outer` (whole algebra when outer is null).
Subspace complement(const Subspace& inner, const Subspace* outer = nullptr);
Subspace intersect(const Subspace& a, const Subspace& b, double rel_tol = 1e-8);
Subspace span_sum(const Subspace& a, const Subspace& b, double rel_tol = kDefaultTol);
Subspace whole(const AlgebraPtr& g);

/// max over basis pairs of the distance of [a_i, b_j] from `target`, relative to the bracket scale.
double bracket_leak(const Subspace& a, const Subspace& b, const Subspace& target);
/// Exact: every [a_i, b_j] lies in target.
bool bracket_contained_exact(const Subspace& a, const Subspace& b, const Subspace& target);
bool in_span_exact(const QMatrix& span, const QVector& v);

}  // namespace orbitcheck
