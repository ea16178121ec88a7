#include "orbitcheck/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

Tolerance Tolerance::from_env() {
  Tolerance t;
  if (const char* env = std::getenv("ORBITCHECK_TOL"); env != nullptr && *env != '\0') {
    try {
      size_t used = 0;
      double v = std::stod(env, &used);
      if (used != std::string(env).size() || !(v > 0)) throw std::invalid_argument(env);
      t.tol = v;
    } catch (const std::exception&) {
      throw InputError(std::string("ORBITCHECK_TOL is not a positive number: '") + env + "'");
    }
  }
  return t;
}

double svd_threshold(const Eigen::Ref<const Matrix>& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() * smax;
}

namespace {

// BDCSVD in Eigen 3.4.0 returns garbage on some rank-deficient inputs; Jacobi is slower but reliable.
Eigen::JacobiSVD<Matrix> svd_of(const Eigen::Ref<const Matrix>& a, unsigned options) {
  return Eigen::JacobiSVD<Matrix>(a, options);
}

int rank_from(const Vector& sv, double rel_tol) {
  if (sv.size() == 0) return 0;
  const double smax = sv(0);
  if (smax <= std::numeric_limits<double>::min()) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * std::max(1.0, smax)) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Eigen::Ref<const Matrix>& a, double rel_tol) {
  if (a.size() == 0) return 0;
  auto svd = svd_of(a, 0);
  return rank_from(svd.singularValues(), rel_tol);
}

Matrix orthonormal_columns(const Eigen::Ref<const Matrix>& a, double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  auto svd = svd_of(a, Eigen::ComputeThinU);
  int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix nullspace(const Eigen::Ref<const Matrix>& a, double rel_tol) {
  const auto n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  auto svd = svd_of(a, Eigen::ComputeFullV);
  int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

Matrix orthogonal_complement(const Eigen::Ref<const Matrix>& onb, int n) {
  if (onb.cols() == 0) return Matrix::Identity(n, n);
  Matrix proj = Matrix::Identity(n, n) - onb * onb.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(proj);
  // Eigenvalues are 0 (span) or 1 (complement), ascending.
  const int k = n - static_cast<int>(onb.cols());
  return es.eigenvectors().rightCols(k);
}

LeastSquares min_norm_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Vector>& b,
                            std::optional<double> threshold) {
  LeastSquares out;
  out.rhs_norm = b.norm();
  out.x = Vector::Zero(a.cols());
  if (a.cols() == 0 || a.rows() == 0) {
    out.residual = out.rhs_norm;
    out.augmented_rank = out.rhs_norm > 0 ? 1 : 0;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double eps = std::numeric_limits<double>::epsilon();
  const double cut = threshold ? *threshold
                               : static_cast<double>(std::max(a.rows(), a.cols())) * eps * (sv.size() ? sv(0) : 0.0);
  out.threshold = cut;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut && sv(i) > 0) {
      out.x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(b) / sv(i));
      ++out.rank;
      out.smallest_kept = sv(i);
    }
  }
  out.residual = (a * out.x - b).norm();

  Matrix aug(a.rows(), a.cols() + 1);
  aug << a, b;
  Eigen::JacobiSVD<Matrix> svd_aug(aug);
  const Vector& sva = svd_aug.singularValues();
  const double cut_aug = threshold ? *threshold
                                   : static_cast<double>(std::max(aug.rows(), aug.cols())) * eps *
                                         std::max(sva.size() ? sva(0) : 0.0, sv.size() ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < sva.size(); ++i)
    if (sva(i) > cut_aug && sva(i) > 0) ++out.augmented_rank;
  return out;
}

std::vector<std::vector<int>> cluster_sorted(const Vector& ascending, double gap) {
  std::vector<std::vector<int>> groups;
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    if (!groups.empty() && std::abs(ascending(i) - ascending(groups.back().back())) < gap)
      groups.back().push_back(static_cast<int>(i));
    else
      groups.push_back({static_cast<int>(i)});
  }
  return groups;
}

std::vector<Matrix> orthonormalize_matrices(const std::vector<Matrix>& mats, double rel_tol) {
  if (mats.empty()) return {};
  const auto rows = mats.front().rows();
  const auto cols = mats.front().cols();
  Matrix stacked(rows * cols, static_cast<Eigen::Index>(mats.size()));
  for (size_t i = 0; i < mats.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(mats[i].data(), rows * cols);
  Matrix q = orthonormal_columns(stacked, rel_tol);
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < q.cols(); ++i) out.emplace_back(Eigen::Map<const Matrix>(q.col(i).data(), rows, cols));
  return out;
}

}  // namespace orbitcheck
