#include "mpsca/sca.hpp"

#include <cmath>
#include <limits>

namespace mpsca {

void SCAConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("sca: epsilon must be > 0");
  if (max_iterations < 1) throw InvalidArgument("sca: max_iterations must be >= 1");
  if (!(subsolver_tolerance > 0.0)) throw InvalidArgument("sca: subsolver tolerance must be > 0");
  if (subsolver_max_iterations < 1) throw InvalidArgument("sca: subsolver cap must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::GapBelowEpsilon: return "gap-below-epsilon";
    case Termination::IterationCap: return "iteration-cap";
    case Termination::ExactSurrogate: return "exact-surrogate";
    case Termination::NoDescent: return "no-descent";
  }
  return "?";
}

const SCAIterate& SCATrace::last() const {
  if (iterations.empty()) throw InvalidArgument("trace: no iterations recorded");
  return iterations.back();
}

double convergence_gap(double prev_value, double curr_value) {
  if (prev_value == 0.0) throw InvalidArgument("convergence_gap: previous value is zero");
  return std::abs(curr_value / prev_value - 1.0);
}

Subsolver projected_gradient_subsolver(double tol, int cap) {
  return [tol, cap](const SmoothObjective& f, const FeasibleRegion& region, const Vector& x0) {
    return minimize_convex(f, region, x0, tol, cap);
  };
}

std::vector<AuxBlock> tangent_aux_all(const CompositeObjective& objective, const Vector& x) {
  std::vector<AuxBlock> y;
  y.reserve(objective.terms().size());
  for (const auto& term : objective.terms()) y.push_back(tangent_aux(term, x));
  return y;
}

SmoothObjective am_surrogate(const CompositeObjective& objective, const std::vector<AuxBlock>& y) {
  if (y.size() != objective.terms().size())
    throw InvalidArgument("am_surrogate: one aux block per term required");
  return {[&objective, y](const Vector& x) {
            double v = objective.convex_part().value(x);
            for (std::size_t n = 0; n < y.size(); ++n)
              v += am_product_majorizer(objective.terms()[n], x, y[n]);
            return v;
          },
          [&objective, y](const Vector& x) {
            Vector g = objective.convex_part().gradient(x);
            for (std::size_t n = 0; n < y.size(); ++n)
              g += am_product_majorizer_gradient(objective.terms()[n], x, y[n]);
            return g;
          }};
}

SCATrace run_sca_loop(const std::function<double(const Vector&)>& objective, const Vector& x0,
                      const SCAConfig& cfg, const std::function<SCAStep(const Vector&)>& step) {
  cfg.validate();
  SCATrace trace;
  trace.x0 = x0;
  trace.initial_objective = objective(x0);
  if (!std::isfinite(trace.initial_objective))
    throw DomainViolation("sca: objective not finite at x0");

  Vector x = x0;
  double previous = trace.initial_objective;
  for (int i = 1; i <= cfg.max_iterations; ++i) {
    SCAStep s = step(x);
    if (s.outcome == SCAStep::Outcome::Stalled) {
      trace.termination = Termination::NoDescent;
      return trace;
    }
    SCAIterate it;
    it.index = i;
    it.x = s.x_next;
    it.y = std::move(s.y);
    it.objective = objective(s.x_next);
    // gap on a zero previous value is undefined; treat as converged when both are 0
    it.gap = previous == 0.0 ? (it.objective == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                             : convergence_gap(previous, it.objective);
    it.subsolver_iterations = s.subsolver_iterations;
    it.aux_updates = s.aux_updates;
    trace.iterations.push_back(std::move(it));

    x = s.x_next;
    previous = trace.iterations.back().objective;
    if (s.outcome == SCAStep::Outcome::Exact) {
      trace.termination = Termination::ExactSurrogate;
      return trace;
    }
    if (trace.iterations.back().gap <= cfg.epsilon) {
      trace.termination = Termination::GapBelowEpsilon;
      return trace;
    }
  }
  trace.termination = Termination::IterationCap;
  return trace;
}

SCATrace run_sca(const CompositeObjective& objective, const FeasibleRegion& region,
                 const Vector& x0, const SCAConfig& cfg, Subsolver subsolver) {
  cfg.validate();
  check_point(x0, "sca x0");
  if (!region.contains(x0, 1e-9)) throw InvalidArgument("sca: x0 is infeasible");
  for (const auto& term : objective.terms()) {
    if (term.sign() != Sign::Plus)
      throw InvalidArgument("sca: AM majorizer needs every product term to have sign +1");
  }
  if (!subsolver) subsolver = projected_gradient_subsolver(cfg.subsolver_tolerance,
                                                          cfg.subsolver_max_iterations);
  long aux_per_iteration = 0;
  for (const auto& term : objective.terms()) aux_per_iteration += term.order();

  auto step = [&](const Vector& x) {
    SCAStep s;
    s.y = tangent_aux_all(objective, x);
    const SmoothObjective surrogate = am_surrogate(objective, s.y);
    // warm start at x keeps the surrogate (hence the objective) non-increasing
    const SubsolveResult r = subsolver(surrogate, region, x);
    s.x_next = r.x_star;
    s.subsolver_iterations = r.iterations;
    s.aux_updates = aux_per_iteration;
    if (objective.terms().empty()) s.outcome = SCAStep::Outcome::Exact;
    return s;
  };
  return run_sca_loop([&](const Vector& x) { return objective.value(x); }, x0, cfg, step);
}

}  // namespace mpsca
