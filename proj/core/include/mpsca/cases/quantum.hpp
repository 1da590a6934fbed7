#pragma once

#include <vector>

#include "mpsca/sca.hpp"

namespace mpsca::cases {

using Point2 = Eigen::Vector2d;

struct QuantumConfig {
  std::vector<Point2> nodes;  ///< km
  std::vector<double> alpha;  ///< one per pair, empty means all 1
  double eta = 0.2;
  double beta = 1.0;

  void validate() const;
};

struct NodePair {
  int first, second;
};

/// Source position q and one slack r_m per node pair, z = (q, r).
/// Objective sum_m alpha_m^-1 10^((eta/10)(|q-u_n| + |q-u_n'|) + beta r_m)
/// subject to | |q-u_n| - |q-u_n'| | <= r_m.
struct QuantumProblem {
  QuantumConfig cfg;
  std::vector<NodePair> pairs;  ///< all n < n'
  FeasibleRegion region;        ///< q free, r >= 0

  int num_pairs() const { return static_cast<int>(pairs.size()); }
  double objective(const Vector& z) const;
  Vector objective_gradient(const Vector& z) const;
  /// Objective with r_m = |distance difference|, a function of q alone.
  double reduced_objective(const Point2& q) const;
  /// | |q-u_n| - |q-u_n'| |
  double distance_gap(const Point2& q, int m) const;
  /// max_m (distance_gap - r_m), <= 0 when feasible
  double max_violation(const Vector& z) const;
  /// (q, |distance gaps|)
  Vector lift(const Point2& q) const;
};

QuantumProblem build_quantum_problem(const QuantumConfig& cfg);

/// Convexified form of the squared pair constraint around (q0, r0):
///   c1 |q-u_n|^2 + c2 |q-u_n'|^2 <= r0^2 + 2 r0 (r - r0)
/// with y = -|q0-u_n'| / (2 |q0-u_n|), c1 = 1 + 2y, c2 = 1 + 1/(2y).
struct TransformedConstraint {
  Point2 u, u_prime;
  double y = 0.0, r0 = 0.0, c1 = 0.0, c2 = 0.0;

  double lhs(const Point2& q) const;
  double rhs(double r) const;
  double value(const Point2& q, double r) const { return lhs(q) - rhs(r); }
  Point2 lhs_gradient(const Point2& q) const;
};

/// Throws DomainViolation when q0 sits on either node, InvalidArgument for r0 <= 0.
TransformedConstraint transform_quantum_constraint(const QuantumProblem& problem, int pair,
                                                   const Point2& q0, double r0);

struct QuantumRun {
  SCATrace trace;
  /// iterations whose raw subproblem solution broke an original constraint
  int raw_infeasible = 0;
};

/// Each step solves the transformed subproblem in (q, r), then moves q
/// toward its solution with a halving step until the reduced objective
/// drops, and resets r to the distance gaps so every iterate is feasible.
QuantumRun run_quantum_sca(const QuantumProblem& problem, const Point2& q0, const SCAConfig& cfg);

/// Grid search of the reduced objective over the padded node bounding box,
/// followed by successive 10x finer local grids. Returns {argmin, value}.
std::pair<Point2, double> quantum_grid_minimum(const QuantumProblem& problem, int points = 401);

}  // namespace mpsca::cases
