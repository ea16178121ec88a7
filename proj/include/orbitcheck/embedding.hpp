#pragma once

// Injective homomorphisms between algebras, stored column-wise: column i is the
// image of the i-th domain basis vector in codomain coordinates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/lie_algebra.hpp"
#include "orbitcheck/zoo.hpp"

namespace orbitcheck {

using Params = std::map<std::string, std::string>;

struct Embedding {
  AlgebraPtr domain;
  AlgebraPtr codomain;
  Matrix matrix;                 // codomain.dim x domain.dim
  std::optional<QMatrix> exact;  // same map over the rationals, when available
  std::string name;
  Params params;

  bool is_exact() const { return exact.has_value(); }
};

struct EmbeddingReport {
  double homomorphism_residual = 0.0;  // max over basis pairs, relative to bracket scale
  bool exact_checked = false;          // homomorphism verified over the rationals
  int rank = 0;
  bool injective = false;
  /// Ratio of the pulled-back -Killing form of the codomain to -Killing of the domain,
  /// with the misfit of that proportionality (0 when the domain is simple).
  double index = 0.0;
  double index_misfit = 0.0;
  bool passed = false;
};

EmbeddingReport check_embedding(const Embedding& e, double tol = kDefaultTol);

/// Builds an embedding and throws InvariantViolation unless it is an injective homomorphism.
Embedding make_embedding(AlgebraPtr domain, AlgebraPtr codomain, const QMatrix& map, std::string name,
                         Params params = {});
Embedding make_embedding(AlgebraPtr domain, AlgebraPtr codomain, const Matrix& map, std::string name,
                         Params params = {});

/// outer o inner.
Embedding compose(const Embedding& outer, const Embedding& inner);

/// Image as a subspace of the codomain (exact when the map is).
Subspace image(const Embedding& e);

/// Map from images given as matrices in the codomain's realization.
Embedding embedding_from_images(AlgebraPtr domain, const ClassicalAlgebra& codomain, const std::vector<QCMat>& images,
                                std::string name, Params params = {});
/// Float variant; every image must lie in the span to 1e-10.
Embedding embedding_from_images(AlgebraPtr domain, const ClassicalAlgebra& codomain,
                                const std::vector<Eigen::MatrixXcd>& images, std::string name, Params params = {});

/// Block-diagonal map between direct sums (domain and codomain are built here).
Embedding direct_sum_embedding(const std::vector<Embedding>& parts, std::string name = {});

/// Identity map of an algebra into itself.
Embedding identity_embedding(const AlgebraPtr& g);

}  // namespace orbitcheck
