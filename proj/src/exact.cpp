#include "orbitcheck/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& t) {
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
  };
  strip(s);
  if (s.empty()) throw InputError("empty rational literal");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      size_t decimals = s.size() - dot - 1;
      mpz_class den = 1;
      for (size_t i = 0; i < decimals; ++i) den *= 10;
      if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
      if (digits[0] == '+') digits.erase(0, 1);
      Rational q(mpz_class(digits), den);
      q.canonicalize();
      return q;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational q(s);
    if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("not a rational literal: '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

Eigen::VectorXd to_double(const QVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
  return out;
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, int rows) {
  QMatrix m(rows, static_cast<int>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c) m.set_column(static_cast<int>(c), columns[c]);
  return m;
}

QVector QMatrix::column(int c) const {
  QVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void QMatrix::set_column(int c, const QVector& v) {
  if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("QMatrix::set_column: size mismatch");
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::hcat(const QMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("QMatrix::hcat: row mismatch");
  QMatrix out(rows_, cols_ + right.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (int c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
  }
  return out;
}

QMatrix QMatrix::columns(int first, int count) const {
  QMatrix out(rows_, count);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Eigen::MatrixXd QMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).get_d();
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("QMatrix product: shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < rhs.cols_; ++c)
        if (rhs(k, c) != 0) out(r, c) += a * rhs(k, c);
    }
  return out;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("QMatrix*vector: shape mismatch");
  QVector out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (v[c] != 0 && (*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

int exact_rank(const QMatrix& a) {
  const int rows = a.rows();
  const int cols = a.cols();
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (int r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    for (int c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(r, c).get_den_mpz_t());
    for (int c = 0; c < cols; ++c) m[r][c] = a(r, c).get_num() * (lcm / a(r, c).get_den());
  }
  // Bareiss: every intermediate entry is an exact integer minor.
  mpz_class prev = 1;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) {
        m[r][k] = m[r][k] * m[rank][c] - m[r][c] * m[rank][k];
        mpz_divexact(m[r][k].get_mpz_t(), m[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::vector<int> rref(QMatrix& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
    int pivot = -1;
    for (int r = row; r < a.rows(); ++r)
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int k = 0; k < a.cols(); ++k) std::swap(a(pivot, k), a(row, k));
    Rational inv = 1 / a(row, c);
    for (int k = c; k < a.cols(); ++k) a(row, k) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (int k = c; k < a.cols(); ++k)
        if (a(row, k) != 0) a(r, k) -= f * a(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

QMatrix exact_nullspace(const QMatrix& a) {
  QMatrix r = a;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols());
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(static_cast<int>(i), free);
    basis.push_back(std::move(v));
  }
  return QMatrix::from_columns(basis, a.cols());
}

std::optional<QVector> exact_solve(const QMatrix& a, const QVector& b) {
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  QVector x(a.cols());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(static_cast<int>(i), a.cols());
  return x;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace orbitcheck

namespace orbitcheck {

std::optional<Rational> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    mpz_class ai(a);
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational q(h1, k1);
    q.canonicalize();
    if (std::abs(q.get_d() - x) <= tol) return q;
    double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::optional<QMatrix> rationalize(const Eigen::MatrixXd& a, long max_den, double tol) {
  QMatrix out(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      auto q = rationalize(a(r, c), max_den, tol);
      if (!q) return std::nullopt;
      out(static_cast<int>(r), static_cast<int>(c)) = *q;
    }
  return out;
}

}  // namespace orbitcheck
