#pragma once

// Classical compact Lie algebras built from explicit matrix realizations.
//
// Basis conventions (E_ij is the matrix unit):
//   so(n): E_ij - E_ji for i < j, lexicographic.
//   su(n): i(E_kk - E_{k+1,k+1}) for k = 0..n-2, then for each i < j the pair
//          E_ij - E_ji, i(E_ij + E_ji).
//   u(n):  the su(n) basis followed by i*I.
//   sp(n): complex 2n x 2n matrices [[A, -conj(B)], [B, conj(A)]] with A skew-Hermitian
//          and B complex symmetric (these preserve J = [[0, I], [-I, 0]]). Basis: the A-part
//          i E_aa, then for a < b the pair E_ab - E_ba, i(E_ab + E_ba); then the B-part
//          E_aa, i E_aa, then for a < b the pair E_ab + E_ba, i(E_ab + E_ba).
//   torus(n): abelian, identity inner product.
// Coordinates of a matrix are recovered through the real Frobenius pairing Re tr(X^* Y).

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitcheck/lie_algebra.hpp"

namespace orbitcheck {

struct QComplex {
  Rational re;
  Rational im;
};

/// Sparse square matrix with Gaussian-rational entries.
class QCMat {
 public:
  QCMat() = default;
  explicit QCMat(int n) : n_(n) {}

  int size() const { return n_; }
  void add(int r, int c, const Rational& re, const Rational& im = 0);
  const std::map<std::pair<int, int>, QComplex>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }

  QCMat operator*(const QCMat& o) const;
  QCMat operator+(const QCMat& o) const;
  QCMat operator-(const QCMat& o) const;
  QCMat scaled(const Rational& s) const;
  QCMat commutator(const QCMat& o) const { return (*this) * o - o * (*this); }
  QCMat adjoint() const;
  QCMat transpose() const;
  QCMat conj() const;
  bool operator==(const QCMat& o) const;
  Eigen::MatrixXcd to_dense() const;

 private:
  int n_ = 0;
  std::map<std::pair<int, int>, QComplex> e_;
};

/// A Lie algebra realized as a span of complex matrices, with coordinate recovery.
class Realization {
 public:
  Realization() = default;
  Realization(int n, std::vector<QCMat> basis);

  int matrix_size() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<QCMat>& basis() const { return basis_; }

  /// Exact coordinates, or nullopt when x is not in the span.
  std::optional<QVector> coords(const QCMat& x) const;
  /// Least-squares coordinates of a dense matrix; `residual` receives the Frobenius misfit.
  Vector coords(const Eigen::MatrixXcd& x, double* residual = nullptr) const;
  /// Dense matrix of a coordinate vector.
  Eigen::MatrixXcd matrix(const Vector& x) const;

 private:
  struct Component {
    std::vector<int> members;
    QMatrix gram_inv;
    Matrix gram_inv_f;
  };
  int n_ = 0;
  std::vector<QCMat> basis_;
  std::vector<Eigen::MatrixXcd> dense_;
  std::vector<Component> components_;
  std::vector<int> component_of_;
};

/// Structure constants of the span of `basis` (must be bracket-closed).
StructureTensor structure_from_realization(const Realization& r);

struct ClassicalAlgebra {
  AlgebraPtr algebra;
  Realization realization;  // empty for the torus
};

/// classical(family, n) for family in {so, su, sp, u, torus}; cached per (family, n).
const ClassicalAlgebra& classical(const std::string& family, int n);
AlgebraPtr classical_algebra(const std::string& family, int n);

/// Dimension formula for a family, without building it.
int classical_dim(const std::string& family, int n);

/// Basis matrices of the documented conventions.
std::vector<QCMat> so_basis(int n);
std::vector<QCMat> su_basis(int n);
std::vector<QCMat> u_basis(int n);
std::vector<QCMat> sp_basis(int n);

}  // namespace orbitcheck
