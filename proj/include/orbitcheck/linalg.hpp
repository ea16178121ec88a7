#pragma once

// Floating-point helpers shared by every module: numerical rank, null spaces,
// minimum-norm least squares and eigenvalue clustering.

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace orbitcheck {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default absolute/relative tolerance of float mode.
inline constexpr double kDefaultTol = 1e-9;

/// Tolerance set threaded through numerical routines.
struct Tolerance {
  double tol = kDefaultTol;        // residual / membership tolerance
  double eig_gap = 1e-6;           // eigenvalue clustering gap for module splitting
  double rank_rel = 1e-9;          // relative singular-value cutoff for subspace ranks

  /// Tolerance with `tol` taken from ORBITCHECK_TOL when set.
  static Tolerance from_env();
};

/// Singular-value cutoff max(rows, cols) * eps * sigma_max.
double svd_threshold(const Eigen::Ref<const Matrix>& a);

int numerical_rank(const Eigen::Ref<const Matrix>& a, double rel_tol);

/// Orthonormal (Euclidean) columns spanning the column space of `a`.
Matrix orthonormal_columns(const Eigen::Ref<const Matrix>& a, double rel_tol);

/// Orthonormal basis of ker(a); relative cutoff on singular values.
Matrix nullspace(const Eigen::Ref<const Matrix>& a, double rel_tol);

/// Orthonormal basis of the Euclidean orthogonal complement of the span of the
/// orthonormal columns `onb` inside R^n.
Matrix orthogonal_complement(const Eigen::Ref<const Matrix>& onb, int n);

/// Minimum-norm least-squares solve with rank information for a and [a | b].
struct LeastSquares {
  Vector x;
  double residual = 0.0;       // ||a x - b||
  double rhs_norm = 0.0;       // ||b||
  int rank = 0;                // numerical rank of a
  int augmented_rank = 0;      // numerical rank of [a | b]
  double threshold = 0.0;      // singular-value cutoff used for a
  double smallest_kept = 0.0;  // smallest singular value of a above the cutoff

  /// residual / ||b||; zero when b = 0.
  double relative_residual() const { return rhs_norm > 0 ? residual / rhs_norm : 0.0; }
};

LeastSquares min_norm_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Vector>& b,
                            std::optional<double> threshold = std::nullopt);

/// Groups ascending eigenvalues into runs whose consecutive gaps are below `gap`.
std::vector<std::vector<int>> cluster_sorted(const Vector& ascending, double gap);

/// Frobenius-orthonormalizes a list of equally sized matrices, dropping dependent ones.
std::vector<Matrix> orthonormalize_matrices(const std::vector<Matrix>& mats, double rel_tol);

}  // namespace orbitcheck
