#pragma once

// Reductive decompositions g = h + m, the irreducible splitting of the isotropy
// module m, and the structural case analysis of a pair (g, h) whose isotropy
// module has at most two irreducible summands.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/embedding.hpp"
#include "orbitcheck/registry.hpp"

namespace orbitcheck {

struct ReductiveSpace {
  std::string name;
  AlgebraPtr g;
  Embedding h_embedding;
  std::optional<Embedding> k_embedding;  // k -> g, when a chain h ⊂ k ⊂ g is known
  Subspace h;
  Subspace m;
  std::optional<Subspace> k;
  double reductive_residual = 0.0;  // relative leak of [h, m] out of m (0 when checked exactly)

  // Filled by decompose_isotropy.
  bool decomposed = false;
  std::vector<Subspace> modules;
  std::vector<int> isotypic;  // equal entries = isomorphic modules
  int metric_space_dim = 0;   // dim of ad(h)-equivariant symmetric operators on m
  double module_residual = 0.0;
  std::string ordering;  // "chain", "subalgebra" or "dimension"
  // The invariant pieces m1, m2 used by two-parameter metrics: k ⊖ h and g ⊖ k for a
  // chain, otherwise the two modules themselves. Empty when neither applies.
  std::vector<Subspace> parts;
  std::vector<int> part_of;  // per module, index into parts (-1 when parts is empty)

  bool two_summand() const { return modules.size() == 2; }
  bool isotypic_pair() const { return two_summand() && isotypic[0] == isotypic[1]; }
  bool exact() const { return h.exact() && m.exact(); }
  bool has_parts() const { return parts.size() == 2; }
};

/// Builds h, m and checks the reductive and effectiveness conditions; modules stay empty.
ReductiveSpace reductive_space(const Embedding& h_in_g, const Embedding* k_in_g = nullptr, double tol = kDefaultTol);

/// Splits m into ad(h)-irreducible modules. With a chain the order is m1 = k ⊖ h,
/// m2 = g ⊖ k; otherwise a module m_i with h + m_i a subalgebra goes first, and
/// ties are broken by ascending dimension.
void decompose_isotropy(ReductiveSpace& space, std::uint64_t seed = 0, double tol = kDefaultTol);

ReductiveSpace space_from_chain(const Chain& c, std::uint64_t seed = 0, bool decompose = true);

/// ad(h) on a subspace W of g, in Q-orthonormal coordinates of W (one matrix per basis vector of h).
std::vector<Matrix> isotropy_ops(const Subspace& h, const Subspace& w);

/// Matrix of ad(z) restricted to w for a vector z of g (in W coordinates).
Matrix restricted_ad(const LieAlgebra& g, const Vector& z, const Subspace& w);

bool is_subalgebra(const Subspace& s, double tol = kDefaultTol);

struct Ideals {
  Subspace center;
  std::vector<Subspace> simple;  // ascending dimension
};

/// Center and simple ideals of a compact algebra (throws InputError when not compact).
Ideals ideals(const AlgebraPtr& g, std::uint64_t seed = 0);

struct StructureReport {
  int case_label = 0;  // 1..7
  int center_dim = 0;
  std::vector<int> ideal_dims;
  std::vector<int> projection_dims;  // dim of the projection of h to each simple ideal
  int p = 0;                          // ideals not covered by their projection
  int l = 0;                          // dim of the center of h
  int m = 0;                          // number of simple ideals of h
  int u = 0;                          // sum of dims of projections of the center of h
  std::vector<int> v;                 // per simple ideal of h: number of ideals of g it projects to, descending
  int inequality_lhs = 0;             // p + (u - l) + sum (v_i - 1)
  std::string reason;
};

StructureReport classify_structure(const Embedding& h_in_g, std::uint64_t seed = 0);

std::string case_description(int label);

}  // namespace orbitcheck
