#include "mpsca/subsolver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mpsca {
namespace {

constexpr double kProjectionViolation = 1e-10;
constexpr int kProjectionSweeps = 10000;

Vector clip(const Vector& x, const FeasibleRegion& region) {
  return x.cwiseMax(region.lower()).cwiseMin(region.upper());
}

Vector project_halfspace(const Vector& x, const LinearConstraint& c) {
  const double excess = c.a.dot(x) - c.b;
  if (excess <= 0.0) return x;
  return x - (excess / c.a.squaredNorm()) * c.a;
}

double safe_value(const SmoothObjective& f, const Vector& x) {
  try {
    const double v = f.value(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  } catch (const DomainViolation&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Box plus one halfspace: the projection is clip(x - lambda a) for the
// multiplier lambda >= 0 that makes the halfspace tight; bisect on lambda.
Vector project_box_halfspace(const Vector& x, const FeasibleRegion& region,
                             const LinearConstraint& c) {
  auto at = [&](double lambda) { return clip(x - lambda * c.a, region); };
  double lo = 0.0, hi = 1.0 / c.a.norm();
  for (int i = 0; c.a.dot(at(hi)) > c.b; ++i, hi *= 2.0) {
    if (i > 2000) throw NumericalFailure("project: halfspace does not meet the box");
    lo = hi;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (c.a.dot(at(mid)) > c.b ? lo : hi) = mid;
  }
  return at(hi);
}

// Projection in the norm |v|_D = |D^{1/2} v| via w = D^{1/2} z.
class ScaledProjector {
 public:
  ScaledProjector(const FeasibleRegion& region, const Vector& diagonal)
      : root_(diagonal.cwiseSqrt()), scaled_(scaled_region(region, root_)) {}

  Vector operator()(const Vector& z) const {
    return project(z.cwiseProduct(root_), scaled_).cwiseQuotient(root_);
  }

 private:
  static FeasibleRegion scaled_region(const FeasibleRegion& region, const Vector& root) {
    std::vector<Interval> box;
    for (int i = 0; i < region.dimension(); ++i)
      box.push_back({region.lower()[i] * root[i], region.upper()[i] * root[i]});
    std::vector<LinearConstraint> cons;
    for (const auto& c : region.constraints()) cons.push_back({c.a.cwiseQuotient(root), c.b});
    return FeasibleRegion(std::move(box), std::move(cons));
  }

  Vector root_;
  FeasibleRegion scaled_;
};

Vector safe_diagonal(const Vector& d) {
  double top = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (std::isfinite(d[i])) top = std::max(top, std::abs(d[i]));
  const double floor = top > 0.0 ? 1e-12 * top : 1.0;
  Vector out(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i)
    out[i] = std::isfinite(d[i]) ? std::max(d[i], floor) : floor;
  return out;
}

}  // namespace

const char* to_string(SubsolveStatus status) {
  switch (status) {
    case SubsolveStatus::Converged: return "converged";
    case SubsolveStatus::IterationCap: return "iteration-cap";
    case SubsolveStatus::Stalled: return "stalled";
  }
  return "?";
}

Vector project(const Vector& x, const FeasibleRegion& region) {
  if (x.size() != region.dimension()) throw InvalidArgument("project: dimension mismatch");
  if (!x.allFinite()) throw InvalidArgument("project: non-finite point");

  std::vector<const LinearConstraint*> halfspaces;
  for (const auto& c : region.constraints()) {
    if (c.a.squaredNorm() == 0.0) {
      if (c.b < 0.0) throw InvalidArgument("project: constraint 0 <= b with b < 0 is empty");
      continue;
    }
    halfspaces.push_back(&c);
  }

  Vector current = clip(x, region);
  if (halfspaces.empty() || region.max_violation(current) <= 0.0) return current;

  if (halfspaces.size() == 1) return project_box_halfspace(x, region, *halfspaces.front());

  // Dykstra: one correction vector per set, box first.
  const std::size_t sets = halfspaces.size() + 1;
  std::vector<Vector> correction(sets, Vector::Zero(x.size()));
  current = x;
  for (int sweep = 0; sweep < kProjectionSweeps; ++sweep) {
    const Vector before = current;
    for (std::size_t s = 0; s < sets; ++s) {
      const Vector shifted = current + correction[s];
      const Vector next = s == 0 ? clip(shifted, region) : project_halfspace(shifted, *halfspaces[s - 1]);
      correction[s] = shifted - next;
      current = next;
    }
    const double moved = (current - before).norm();
    if (region.max_violation(current) < kProjectionViolation &&
        moved <= 1e-13 * (1.0 + current.norm()))
      return current;
  }
  throw NumericalFailure("project: Dykstra sweeps did not converge");
}

SubsolveResult minimize_convex(const SmoothObjective& objective, const FeasibleRegion& region,
                               const Vector& x0, double tol, int cap, const ArmijoParams& armijo) {
  check_point(x0, "subsolver x0");
  if (!(tol > 0.0)) throw InvalidArgument("subsolver: tolerance must be > 0");
  if (cap < 0) throw InvalidArgument("subsolver: negative iteration cap");
  if (!region.contains(x0, 1e-9)) throw InvalidArgument("subsolver: x0 is infeasible");

  SubsolveResult result;
  Vector x = x0;
  double f = safe_value(objective, x);
  if (!std::isfinite(f)) throw DomainViolation("subsolver: objective not finite at x0");

  for (int it = 0;; ++it) {
    const Vector g = objective.gradient(x);
    if (!g.allFinite()) throw NumericalFailure("subsolver: non-finite gradient");
    const double mapping = (x - project(x - g, region)).norm();
    result.iterations = it;
    result.gradient_mapping_norm = mapping;
    if (mapping <= tol) {
      result.status = SubsolveStatus::Converged;
      break;
    }
    if (it >= cap) {
      result.status = SubsolveStatus::IterationCap;
      break;
    }

    std::function<Vector(const Vector&)> arc = [&](const Vector& v) { return project(v, region); };
    Vector direction = g;
    if (objective.curvature) {
      const Vector d = safe_diagonal(objective.curvature(x));
      direction = g.cwiseQuotient(d);
      arc = ScaledProjector(region, d);
    }

    double step = armijo.initial_step;
    bool accepted = false;
    // Largest decrease a quadratic fit along any rejected trial promises:
    // phi(s) = s pred + s^2 curv has minimum -pred^2 / (4 curv).
    double model_decrease = 0.0;
    bool any_finite = false;
    for (int h = 0; h <= armijo.max_halvings; ++h, step *= armijo.shrink) {
      const Vector trial = arc(x - step * direction);
      const double predicted = g.dot(trial - x);
      const double ft = safe_value(objective, trial);
      if (std::isfinite(ft) && ft < f && ft <= f + armijo.sufficient_decrease * predicted) {
        x = trial;
        f = ft;
        accepted = true;
        break;
      }
      if (!std::isfinite(ft)) continue;
      any_finite = true;
      const double curv = ft - f - predicted;
      if (predicted < 0.0 && curv > 0.0)
        model_decrease = std::max(model_decrease, predicted * predicted / (4.0 * curv));
    }
    if (!accepted) {
      // Nothing left above the evaluation noise of f (a few hundred ulps for
      // composite surrogates): stop here instead of failing.
      if (any_finite && model_decrease <= 1e-12 * std::max(1.0, std::abs(f))) {
        result.status = SubsolveStatus::Stalled;
        break;
      }
      std::ostringstream os;
      os << "subsolver: line search failed after " << armijo.max_halvings
         << " halvings (f=" << f << ", gradient mapping=" << mapping
         << ", model decrease=" << model_decrease << ")";
      throw NumericalFailure(os.str());
    }
  }
  result.x_star = x;
  result.value = f;
  return result;
}

SubsolveResult minimize_with_barrier(const SmoothObjective& objective,
                                     const std::vector<SmoothConstraint>& constraints,
                                     const FeasibleRegion& region, const Vector& x0,
                                     const BarrierOptions& options) {
  for (const auto& c : constraints) {
    if (!(c.value(x0) < 0.0)) throw InvalidArgument("barrier: x0 is not strictly feasible");
  }
  if (constraints.empty())
    return minimize_convex(objective, region, x0, options.inner_tolerance, options.inner_cap);

  Vector x = x0;
  double weight = options.initial_weight;
  SubsolveResult last;
  int total_iterations = 0;
  for (int round = 0; round < options.rounds; ++round, weight *= options.weight_growth) {
    SmoothObjective barrier{
        [&, weight](const Vector& z) {
          double v = weight * objective.value(z);
          for (const auto& c : constraints) {
            const double g = c.value(z);
            if (!(g < 0.0)) return std::numeric_limits<double>::infinity();
            v -= std::log(-g);
          }
          return v;
        },
        [&, weight](const Vector& z) {
          Vector grad = weight * objective.gradient(z);
          for (const auto& c : constraints) grad -= c.gradient(z) / c.value(z);
          return grad;
        },
        {}};
    try {
      last = minimize_convex(barrier, region, x, options.inner_tolerance, options.inner_cap);
    } catch (const NumericalFailure&) {
      // late rounds are badly conditioned; keep the last central point
      if (round == 0) throw;
      last.status = SubsolveStatus::Stalled;
      break;
    }
    total_iterations += last.iterations;
    x = last.x_star;
  }
  last.x_star = x;
  last.value = objective.value(x);
  last.iterations = total_iterations;
  return last;
}

}  // namespace mpsca
