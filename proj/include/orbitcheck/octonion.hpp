#pragma once

// Octonions over the rationals and the two constructions built on them:
// g2 as the derivation algebra of the imaginary octonions, and spin(7) inside
// so(8) through left multiplication by imaginary units.
//
// Basis 1 = e0, e1..e7. Products of imaginary units follow the oriented Fano
// triples (a, b, c) with e_a e_b = e_c, e_b e_a = -e_c and cyclic:
//   (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)
// and e_a e_a = -1.

#include <array>
#include <vector>

#include "orbitcheck/zoo.hpp"

namespace orbitcheck {

using Octonion = std::array<Rational, 8>;

/// Structure constants of the product: e_a e_b = sign * e_index.
struct OctonionProduct {
  int index;
  int sign;
};
OctonionProduct octonion_unit_product(int a, int b);

Octonion octonion_multiply(const Octonion& x, const Octonion& y);

/// Real 8x8 matrix of left multiplication by e_a.
QCMat octonion_left(int a);

/// g2 as derivations of Im(O): returns 7x7 real matrices spanning it (14 of them).
/// Throws InvariantViolation if the derivation system has the wrong kernel dimension.
std::vector<QCMat> g2_derivation_basis();

/// Images in so(8) of the so(7) basis E_ij - E_ji (i < j): sign/2 * L_{e_{i+1}} L_{e_{j+1}}.
std::vector<QCMat> spin7_images();

}  // namespace orbitcheck
