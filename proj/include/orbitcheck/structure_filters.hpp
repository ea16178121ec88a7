#pragma once

// Centralizers and normalizers inside the isotropy algebra, the location of
// [m1, m2], and necessary conditions for the GO property read off from the
// generic stabilizer dimensions of the isotropy actions.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitcheck/reductive.hpp"

namespace orbitcheck {

/// C_s(u) = {z in s : [z, u] = 0}. Exact when s is exact and u is given exactly.
Subspace centralizer(const Subspace& s, const Vector& u, double rel_tol = 1e-9);
Subspace centralizer(const Subspace& s, const QVector& u);

struct CentralizerSplit {
  Vector u;
  Subspace c;        // C_h(u)
  Subspace n;        // N_h(C_h(u))
  Subspace c_tilde;  // orthocomplement of c in n
  double commutator_residual = 0.0;  // max |[c_tilde_i, c_j]|, relative
};

CentralizerSplit normalizer_split(const Subspace& h, const Vector& u, double rel_tol = 1e-9);

enum class BracketLocation { zero, in_m1, in_m2, mixed };
std::string to_string(BracketLocation loc);

struct BracketSweep {
  BracketLocation location = BracketLocation::zero;
  double m1_part = 0.0;  // largest m1-component of [x_i, y_j] over basis pairs
  double m2_part = 0.0;
  bool exact = false;
};

/// Where [m1, m2] lies, from all brackets of basis vectors of the two parts.
BracketSweep bracket_relation(const ReductiveSpace& space, double tol = kDefaultTol);

struct PrincipalDim {
  int dim = 0;
  int seeds = 0;
  std::vector<int> draws;  // centralizer dimension per draw
  bool exact = false;      // draws were exact rational vectors
};

/// Generic dim of C_s(v) for v in `module`: the minimum over random draws.
PrincipalDim principal_isotropy_dim(const Subspace& s, const Subspace& module, int n_seeds = 20,
                                    std::uint64_t seed = 0);

struct FilterConclusion {
  std::string rule;
  bool pass = true;
  std::string detail;
};

struct FilterReport {
  BracketSweep bracket;
  PrincipalDim chi1;  // h on m1
  PrincipalDim chi2;  // h on m2
  bool has_eta = false;
  PrincipalDim eta;   // k = h + m_small on the other part, when the bracket is one-sided
  int eta_required = 0;
  std::vector<FilterConclusion> conclusions;

  bool passed() const;
};

/// FAIL (passed() == false) rules the space out as GO for any non-normal two-parameter metric;
/// PASS is inconclusive.
FilterReport necessary_filter(const ReductiveSpace& space, std::uint64_t seed = 0, int n_seeds = 20);

struct RuleTally {
  int applicable = 0;
  int violations = 0;
};

struct ConsequenceReport {
  int pairs = 0;
  RuleTally trivial_normalizer;  // N = C forces [X, Y] = 0
  RuleTally nested_centralizer;  // C(X) ⊆ C(Y) forces [X, Y] in the part of X
  RuleTally mixed_bracket;       // [X, Y] in neither part forces C(X), C(Y) != 0 and dim C~ >= 2
  RuleTally stabilizer_bound;    // one-sided bracket: dim C_k(X) >= dim of the smaller part
  int violations() const;
};

/// Samples pairs X in m1, Y in m2 and checks the consequences of the GO property
/// that only involve centralizers and bracket locations.
ConsequenceReport check_consequences(const ReductiveSpace& space, int n_pairs, std::uint64_t seed = 0,
                                     double tol = 1e-8);

}  // namespace orbitcheck
