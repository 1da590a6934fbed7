#include "mpsca/cases/example1d.hpp"

#include <cmath>
#include <limits>

namespace mpsca::cases {
namespace {

SmoothScalarField inverse_log() {
  return {"1/ln x", [](const Vector& x) { return 1.0 / std::log(x[0]); },
          [](const Vector& x) {
            const double l = std::log(x[0]);
            return Vector::Constant(1, -1.0 / (x[0] * l * l)).eval();
          },
          true};
}

SmoothScalarField exponential() {
  return {"exp", [](const Vector& x) { return std::exp(x[0]); },
          [](const Vector& x) { return Vector::Constant(1, std::exp(x[0])).eval(); }, true};
}

}  // namespace

Example1D build_example1d() {
  std::vector<ProductTerm> terms;
  terms.emplace_back(std::vector<SmoothScalarField>{fields::coordinate(0), inverse_log()});
  terms.emplace_back(
      std::vector<SmoothScalarField>{fields::coordinate(0), inverse_log(), exponential()});
  Interval domain{1.0, 10.0, true, false};
  return {CompositeObjective(fields::coordinate(0, false), std::move(terms)),
          FeasibleRegion({domain})};
}

double example1d_bound_curve(const Example1D& problem, double x, double x0, MeanKind kind) {
  const Vector px = Vector::Constant(1, x);
  const Vector p0 = Vector::Constant(1, x0);
  double v = problem.objective.convex_part().value(px);
  for (const auto& term : problem.objective.terms())
    v += mean_bound(kth_powers(term.factor_values(px)), tangent_aux(term, p0), kind).value;
  return v;
}

std::pair<double, double> example1d_grid_minimum(const Example1D& problem, int points) {
  if (points < 1) throw InvalidArgument("grid: need >= 1 point");
  double best_x = 10.0, best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= points; ++i) {
    const double x = 1.0 + 9.0 * i / points;
    const double v = problem.objective.value(Vector::Constant(1, x));
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

SCATrace run_example1d(const Example1D& problem, double x0, const SCAConfig& cfg) {
  return run_sca(problem.objective, problem.region, Vector::Constant(1, x0), cfg);
}

}  // namespace mpsca::cases
