#pragma once

// Metric operators on m and the linear systems deciding the geodesic orbit
// property. For a metric (x, y) = <A x, y> on m, the vector X in m is geodesic
// (its geodesic is an orbit) iff some Z in h has [X + Z, A X] in h; projecting to
// m gives the linear system  proj_m [Z, A X] = -proj_m [X, A X]  in Z.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitcheck/structure_filters.hpp"

namespace orbitcheck {

struct MetricOperator {
  enum class Form { two_param, block, general };
  Form form = Form::two_param;
  double lambda = 1.0;  // two_param: lambda on m1, mu on m2
  double mu = 1.0;
  Matrix weights;       // block: symmetric weights over the two modules of an isotypic pair
  Matrix matrix;        // the operator in the orthonormal coordinates of m
  double equivariance_residual = 0.0;

  /// A multiple of the identity (a normal metric).
  bool scalar(double tol = 1e-12) const;
};

std::string to_string(MetricOperator::Form f);

/// lambda Id on m1 + mu Id on m2 (the two parts of the space).
MetricOperator two_param_metric(const ReductiveSpace& space, double lambda, double mu);

/// w00 Id on m1 + w11 Id on m2 + w01 (T + T^T) for an isotypic pair, T: m2 -> m1 the
/// equivariant isometry. `w` must be symmetric positive definite.
MetricOperator block_metric(const ReductiveSpace& space, const Matrix& w);

/// Any symmetric positive definite equivariant operator given in m coordinates.
MetricOperator metric_from_matrix(const ReductiveSpace& space, const Matrix& a, double tol = 1e-9);

/// Equivariant isometry m_j -> m_i between isomorphic modules (module coordinates), or
/// nullopt when the equivariant maps do not form a line.
std::optional<Matrix> module_intertwiner(const ReductiveSpace& space, int i, int j);

enum class WitnessStatus { solved, unsolvable, inconclusive };
std::string to_string(WitnessStatus s);

struct GoWitness {
  Vector x;  // in g coordinates, lies in m
  Vector z;  // in g coordinates, lies in h (minimum-norm solution)
  WitnessStatus status = WitnessStatus::solved;
  double residual = 0.0;  // |L z - b| / (|X| |A X|)
  int rank = 0;
  int augmented_rank = 0;
  int rank_gap = 0;
  double margin = 0.0;    // residual of the best solution; >= 1e3 tol for a robust UNSOLVABLE
  bool exact = false;     // decided in rational arithmetic
};

/// Solves the geodesic-vector condition for X (g coordinates).
GoWitness go_witness_general(const ReductiveSpace& space, const MetricOperator& a, const Vector& x,
                             double tol = kDefaultTol);

/// Exact version: X given by rational coordinates on the exact basis of m, metric two_param
/// with rational lambda, mu. Requires exact parts.
GoWitness go_witness_exact(const ReductiveSpace& space, const Rational& lambda, const Rational& mu,
                           const QVector& x_coords);

enum class GoStatus { go_consistent, not_go, normal_trivial, inconclusive };
std::string to_string(GoStatus s);

struct SamplePlan {
  int samples = 100;
  std::uint64_t seed = 0;
  bool exact = false;
  double tol = kDefaultTol;
  bool stop_at_counterexample = true;
};

struct GoVerdict {
  GoStatus status = GoStatus::go_consistent;
  int samples = 0;
  std::optional<GoWitness> counterexample;
  double max_residual = 0.0;       // over solved samples
  double min_margin = 0.0;         // over unsolvable samples (0 when none)
  int unsolvable = 0;
  int inconclusive = 0;
  double max_witness_norm = 0.0;   // |Z| over solved samples

  bool consistent_with_go() const { return status == GoStatus::go_consistent || status == GoStatus::normal_trivial; }
};

/// Samples X in m (Gaussian directions, alternating with cos(t) X1 + sin(t) X2 mixes of the
/// two parts) and solves each. NOT_GO at the first robustly unsolvable sample.
GoVerdict go_check(const ReductiveSpace& space, const MetricOperator& a, const SamplePlan& plan);

struct GraphResult {
  WitnessStatus status = WitnessStatus::solved;
  Vector z;              // in g coordinates, lies in C~_h(X + Y)
  double residual = 0.0;
  int c_tilde_dim = 0;
  int kernel_dim = 0;    // of the constrained system; 0 means Z is unique
};

/// The unique Z in C~_h(X+Y) with (lambda - mu)[X, Y] = [Z, lambda X + mu Y].
GraphResult geodesic_graph(const ReductiveSpace& space, double lambda, double mu, const Vector& x, const Vector& y,
                           double tol = kDefaultTol);

struct ZxZy {
  WitnessStatus status = WitnessStatus::solved;
  Vector zx;  // in C~_h(X+Y) ∩ C_h(X)
  Vector zy;  // in C~_h(X+Y) ∩ C_h(Y)
  double residual = 0.0;
  int kernel_dim = 0;
};

/// The unique pair with [X, Y] = [Z_Y, X] + [Z_X, Y].
ZxZy zxzy_decompose(const ReductiveSpace& space, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// |Z - ((lambda-mu)/mu) Z_X - ((lambda-mu)/lambda) Z_Y| with Z from geodesic_graph; negative
/// when either system is unsolvable.
double reconstruction_gap(const ReductiveSpace& space, double lambda, double mu, const Vector& x, const Vector& y,
                          double tol = kDefaultTol);

}  // namespace orbitcheck
