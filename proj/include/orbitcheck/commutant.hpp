#pragma once

// Commutant of a set of skew-symmetric operators on R^d (a representation of a
// compact algebra in orthonormal coordinates) and the splitting of R^d into
// irreducible invariant subspaces.

#include <cstdint>
#include <vector>

#include "orbitcheck/linalg.hpp"

namespace orbitcheck {

struct Commutant {
  std::vector<Matrix> basis;  // Frobenius-orthonormal
  double residual = 0.0;      // max_a ||T R_a - R_a T|| over the basis, relative to max ||R_a||
};

/// All T with T R_a = R_a T. Deterministic for a given seed.
Commutant commutant(const std::vector<Matrix>& ops, std::uint64_t seed);

/// Frobenius-orthonormal basis of the symmetric elements of the commutant.
std::vector<Matrix> symmetric_part(const Commutant& c);

/// Operators restricted to the span of the orthonormal columns v: v^T R v.
std::vector<Matrix> restrict_ops(const std::vector<Matrix>& ops, const Matrix& v);

struct Splitting {
  std::vector<Matrix> modules;  // orthonormal column bases, ascending by dimension
  std::vector<int> isotypic;    // group index per module (equal index = isomorphic)
  int symmetric_commutant_dim = 0;
  double invariance_residual = 0.0;  // max ||(I - P) R_a P|| over modules
};

/// Splits R^d into irreducibles using a random symmetric element of the commutant,
/// grouping eigenvalues closer than `eig_gap` (relative to the spread). Each module is
/// certified by a one-dimensional symmetric commutant; on failure the draw is
/// repeated with a new seed and a NumericalFailure is thrown after `attempts`.
Splitting split_irreducible(const std::vector<Matrix>& ops, int d, std::uint64_t seed, double eig_gap = 1e-6,
                            int attempts = 4);

/// Nonzero equivariant map between the spans of orthonormal bases a and b.
bool isomorphic_modules(const Commutant& c, const Matrix& a, const Matrix& b);

}  // namespace orbitcheck
