#include "orbitcheck/octonion.hpp"

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

namespace {

constexpr int kTriples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};

struct Table {
  OctonionProduct p[8][8];
  Table() {
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) p[a][b] = {-1, 0};
    for (int a = 0; a < 8; ++a) {
      p[0][a] = {a, 1};
      p[a][0] = {a, 1};
    }
    for (int a = 1; a < 8; ++a) p[a][a] = {0, -1};
    for (const auto& t : kTriples)
      for (int r = 0; r < 3; ++r) {
        int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
        p[a][b] = {c, 1};
        p[b][a] = {c, -1};
      }
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

OctonionProduct octonion_unit_product(int a, int b) { return table().p[a][b]; }

Octonion octonion_multiply(const Octonion& x, const Octonion& y) {
  Octonion out;
  for (int a = 0; a < 8; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (int b = 0; b < 8; ++b) {
      if (sgn(y[b]) == 0) continue;
      auto p = table().p[a][b];
      out[p.index] += p.sign * x[a] * y[b];
    }
  }
  return out;
}

QCMat octonion_left(int a) {
  QCMat m(8);
  for (int b = 0; b < 8; ++b) {
    auto p = table().p[a][b];
    m.add(p.index, b, p.sign);
  }
  return m;
}

std::vector<QCMat> g2_derivation_basis() {
  // Unknown D (7x7) on Im(O), D(e_0) = 0. Condition for imaginary a, b:
  // D(e_a e_b) = D(e_a) e_b + e_a D(e_b), each side an octonion (8 rows).
  auto var = [](int r, int c) { return r * 7 + c; };  // D(e_{c+1}) has coordinate e_{r+1}
  std::vector<QVector> rows;
  for (int a = 1; a < 8; ++a)
    for (int b = 1; b < 8; ++b) {
      std::vector<QVector> eq(8, QVector(49));
      auto pab = table().p[a][b];
      if (pab.index != 0)
        for (int r = 0; r < 7; ++r) eq[r + 1][var(r, pab.index - 1)] += pab.sign;
      for (int r = 0; r < 7; ++r) {
        // D(e_a) e_b: coefficient D[r][a-1] times e_{r+1} e_b
        auto p1 = table().p[r + 1][b];
        eq[p1.index][var(r, a - 1)] -= p1.sign;
        auto p2 = table().p[a][r + 1];
        eq[p2.index][var(r, b - 1)] -= p2.sign;
      }
      for (auto& e : eq)
        if (!is_zero(e)) rows.push_back(std::move(e));
    }
  QMatrix sys(static_cast<int>(rows.size()), 49);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 49; ++j) sys(static_cast<int>(i), j) = rows[i][j];
  QMatrix ker = exact_nullspace(sys);
  if (ker.cols() != 14)
    throw InvariantViolation("octonion derivation system has kernel dimension " + std::to_string(ker.cols()) +
                             " instead of 14");
  std::vector<QCMat> out;
  for (int c = 0; c < ker.cols(); ++c) {
    QCMat m(7);
    for (int r = 0; r < 7; ++r)
      for (int s = 0; s < 7; ++s) m.add(r, s, ker(var(r, s), c));
    if (!(m.transpose() == m.scaled(-1))) throw InvariantViolation("octonion derivation is not antisymmetric");
    out.push_back(m);
  }
  return out;
}

std::vector<QCMat> spin7_images() {
  for (int sign : {1, -1}) {
    std::vector<QCMat> out;
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j)
        out.push_back((octonion_left(i + 1) * octonion_left(j + 1)).scaled(Rational(sign, 2)));
    // Homomorphism test against so(7) relations [E_ij, E_jk] = E_ik for the basis E_ij - E_ji.
    auto so7 = so_basis(7);
    Realization r7(7, so7);
    bool ok = true;
    for (size_t a = 0; a < so7.size() && ok; ++a)
      for (size_t b = a + 1; b < so7.size() && ok; ++b) {
        auto x = r7.coords(so7[a].commutator(so7[b]));
        QCMat img(8);
        for (size_t k = 0; k < so7.size(); ++k)
          if (sgn((*x)[k]) != 0) img = img + out[k].scaled((*x)[k]);
        ok = img == out[a].commutator(out[b]);
      }
    if (ok) return out;
  }
  throw InvariantViolation("spin(7) images of the octonion left multiplications do not form a homomorphism");
}

}  // namespace orbitcheck
