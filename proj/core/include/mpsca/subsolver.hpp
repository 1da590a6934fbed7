#pragma once

#include <functional>
#include <vector>

#include "mpsca/function_core.hpp"

namespace mpsca {

/// Value and gradient callbacks of a smooth function. `value` may return
/// +inf (or throw DomainViolation) outside its domain; the line search
/// treats both as a rejected trial point.
struct SmoothObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  /// Optional positive diagonal D; steps become P_D(x - a D^-1 grad f) with
  /// P_D the projection in the D-weighted norm.
  std::function<Vector(const Vector&)> curvature;
};

enum class SubsolveStatus {
  Converged,     ///< gradient-mapping norm <= tolerance
  IterationCap,  ///< cap reached first
  Stalled,       ///< predicted decrease fell below double resolution of f
};

const char* to_string(SubsolveStatus status);

struct SubsolveResult {
  Vector x_star;
  double value = 0.0;
  double gradient_mapping_norm = 0.0;
  int iterations = 0;
  SubsolveStatus status = SubsolveStatus::Converged;
};

/// Euclidean projection onto the region: box clip, then Dykstra sweeps over
/// the box and every halfspace until the violation is below 1e-10 and a sweep
/// no longer moves the point. Throws NumericalFailure after 10^4 sweeps.
Vector project(const Vector& x, const FeasibleRegion& region);

struct ArmijoParams {
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_halvings = 60;
};

/// Projected gradient descent with Armijo backtracking along the projection
/// arc x(a) = P(x - a grad f(x)). Stops when ||x - P(x - grad f(x))|| <= tol.
///
/// Throws InvalidArgument for an infeasible x0 and NumericalFailure when 60
/// halvings give no sufficient decrease.
SubsolveResult minimize_convex(const SmoothObjective& objective, const FeasibleRegion& region,
                               const Vector& x0, double tol, int cap,
                               const ArmijoParams& armijo = {});

/// g(x) <= 0
struct SmoothConstraint {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

struct BarrierOptions {
  double initial_weight = 1.0;  ///< t in t*f - sum log(-g)
  double weight_growth = 10.0;
  int rounds = 8;
  double inner_tolerance = 1e-8;
  int inner_cap = 5000;
};

/// Log-barrier outer loop around minimize_convex for smooth inequality
/// constraints on top of the region. x0 must satisfy every g(x0) < 0.
/// A line-search failure after the first round ends the loop with status
/// Stalled at the last completed round's point.
SubsolveResult minimize_with_barrier(const SmoothObjective& objective,
                                     const std::vector<SmoothConstraint>& constraints,
                                     const FeasibleRegion& region, const Vector& x0,
                                     const BarrierOptions& options = {});

}  // namespace mpsca
