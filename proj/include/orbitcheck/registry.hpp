#pragma once

// Named subalgebra chains h ⊂ k ⊂ g (k optional) used by the catalog and CLI.
// Every exact entry is built from rational matrices; the principal su(2)/so(3)
// entries are float because their representation matrices have square roots.

#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/embedding.hpp"

namespace orbitcheck {

struct Chain {
  std::string name;
  Params params;
  Embedding h_in_g;
  std::optional<Embedding> h_in_k;
  std::optional<Embedding> k_in_g;

  bool has_k() const { return k_in_g.has_value(); }
};

struct RegistryInfo {
  std::string name;
  std::string summary;
  Params defaults;
  bool exact = true;
};

const std::vector<RegistryInfo>& embedding_registry();

/// Throws InputError for an unknown name or invalid params.
Chain named_embedding(const std::string& name, const Params& params = {});

/// max |composite - direct| over the h -> g matrices (0 when there is no k).
double chain_mismatch(const Chain& c);

/// "so(3)", "su(2)", "sp(1)", "u(2)", "torus(2)", "g2".
AlgebraPtr algebra_by_name(const std::string& text);

/// g2 as derivations of the imaginary octonions (7x7 real matrices).
const ClassicalAlgebra& g2_algebra();

int param_int(const Params& p, const std::string& key, int fallback);

/// Principal su(2) acting irreducibly on C^dim in the spin-(dim-1)/2 representation;
/// images of the su(2) basis i(E00-E11), E01-E10, i(E01+E10).
std::vector<Eigen::MatrixXcd> spin_representation(int dim);

}  // namespace orbitcheck
