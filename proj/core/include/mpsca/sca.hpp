#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mpsca/bounds.hpp"
#include "mpsca/subsolver.hpp"

namespace mpsca {

struct SCAConfig {
  double epsilon = 1e-4;
  int max_iterations = 100;
  double subsolver_tolerance = 1e-9;
  int subsolver_max_iterations = 20000;

  void validate() const;
};

enum class Termination {
  GapBelowEpsilon,
  IterationCap,
  ExactSurrogate,  ///< no product terms, one subsolve is already optimal
  NoDescent,       ///< safeguarded step found no decrease of the true objective
};

const char* to_string(Termination t);

struct SCAIterate {
  int index = 0;              ///< 1-based
  Vector x;                   ///< x after this subsolve
  std::vector<AuxBlock> y;    ///< auxiliaries the subproblem was built with
  double objective = 0.0;     ///< true objective at x
  double gap = 0.0;           ///< |objective / previous objective - 1|
  int subsolver_iterations = 0;
  long aux_updates = 0;       ///< sum over terms of K_n
};

struct SCATrace {
  Vector x0;
  double initial_objective = 0.0;
  std::vector<SCAIterate> iterations;
  Termination termination = Termination::IterationCap;

  const SCAIterate& last() const;
  const Vector& final_x() const { return iterations.empty() ? x0 : last().x; }
  double final_objective() const {
    return iterations.empty() ? initial_objective : last().objective;
  }
};

/// |curr/prev - 1|. Throws InvalidArgument for prev == 0.
double convergence_gap(double prev_value, double curr_value);

using Subsolver =
    std::function<SubsolveResult(const SmoothObjective&, const FeasibleRegion&, const Vector&)>;

Subsolver projected_gradient_subsolver(double tol, int cap);

/// J(x) + sum_n AM majorizer of term n at fixed y[n].
SmoothObjective am_surrogate(const CompositeObjective& objective, const std::vector<AuxBlock>& y);

/// Tangent auxiliaries of every term at x.
std::vector<AuxBlock> tangent_aux_all(const CompositeObjective& objective, const Vector& x);

/// Alternating minimization: y from x, then x from the majorized subproblem,
/// until the gap drops to epsilon or the iteration cap is hit. Every product
/// term must have sign +1. An empty subsolver means projected gradient with
/// the config's tolerance and cap.
SCATrace run_sca(const CompositeObjective& objective, const FeasibleRegion& region,
                 const Vector& x0, const SCAConfig& cfg, Subsolver subsolver = {});

/// One outer step of a problem-specific SCA scheme.
struct SCAStep {
  enum class Outcome { Normal, Exact, Stalled };
  Vector x_next;
  std::vector<AuxBlock> y;
  int subsolver_iterations = 0;
  long aux_updates = 0;
  Outcome outcome = Outcome::Normal;
};

/// Shared outer loop used by run_sca and the case studies.
SCATrace run_sca_loop(const std::function<double(const Vector&)>& objective, const Vector& x0,
                      const SCAConfig& cfg, const std::function<SCAStep(const Vector&)>& step);

}  // namespace mpsca
