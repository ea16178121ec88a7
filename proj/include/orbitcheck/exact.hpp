#pragma once

// Exact rational linear algebra used to certify results where the input data
// is rational (structure constants, embeddings, metric parameters).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace orbitcheck {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Parses "p/q", "p" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }
Eigen::VectorXd to_double(const QVector& v);

/// Dense row-major matrix of rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix from_columns(const std::vector<QVector>& columns, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  QVector column(int c) const;
  void set_column(int c, const QVector& v);
  QMatrix transpose() const;
  QMatrix hcat(const QMatrix& right) const;
  QMatrix columns(int first, int count) const;
  bool is_zero() const;
  Eigen::MatrixXd to_double() const;

  QMatrix operator*(const QMatrix& rhs) const;
  QVector operator*(const QVector& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
int exact_rank(const QMatrix& a);

/// Basis of the right null space, one column per free variable of the RREF.
QMatrix exact_nullspace(const QMatrix& a);

/// Reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMatrix& a);

/// Some solution of a x = b, or nullopt when b is outside the column space.
std::optional<QVector> exact_solve(const QMatrix& a, const QVector& b);

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& s, const QVector& v);
bool is_zero(const QVector& v);

/// Best rational approximation with denominator <= max_den (continued fractions);
/// nullopt when it misses x by more than tol.
std::optional<Rational> rationalize(double x, long max_den = 1000000, double tol = 1e-10);
/// Entry-wise rationalize; nullopt if any entry fails.
std::optional<QMatrix> rationalize(const Eigen::MatrixXd& a, long max_den = 1000000, double tol = 1e-10);

}  // namespace orbitcheck
