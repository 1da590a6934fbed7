#pragma once

#include "mpsca/bounds.hpp"
#include "mpsca/sca.hpp"

namespace mpsca::cases {

/// x + x/ln x + (x/ln x) e^x on (1, 10]: J(x) = x, term 1 = (x, 1/ln x),
/// term 2 = (x, 1/ln x, e^x), both sign +1.
struct Example1D {
  CompositeObjective objective;
  FeasibleRegion region;
};

Example1D build_example1d();

/// Objective with every product term replaced by the mean bound of its
/// K-th powers, auxiliaries frozen at the tangent point x0.
/// HM gives a lower bound, AM and QM upper bounds; all touch at x = x0.
double example1d_bound_curve(const Example1D& problem, double x, double x0, MeanKind kind);

/// Brute-force minimum of the objective on `points` equally spaced points
/// of (1, 10]. Returns {argmin, value}.
std::pair<double, double> example1d_grid_minimum(const Example1D& problem, int points = 100000);

SCATrace run_example1d(const Example1D& problem, double x0, const SCAConfig& cfg);

}  // namespace mpsca::cases
