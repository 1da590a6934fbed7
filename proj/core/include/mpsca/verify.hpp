#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpsca/bounds.hpp"
#include "mpsca/random.hpp"

namespace mpsca {

/// Outcome of one numerical check. The meaning of worst_slack is per check
/// and documented on the function producing it; the witness holds the
/// inputs needed to recompute it.
struct VerificationReport {
  std::string name;
  long samples = 0;
  long violations = 0;
  double worst_slack = 0.0;
  nlohmann::json witness = nlohmann::json::object();
  std::uint64_t seed = 0;
  bool flagged = false;       ///< detect_constant_y only
  bool inconclusive = false;  ///< too few inputs to decide

  bool passed() const { return violations == 0 && !inconclusive; }
};

nlohmann::json to_json(const VerificationReport& report);

/// Central finite differences with step rel_h * max(1, |x_i|).
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                   double rel_h = 1e-6);
Eigen::MatrixXd fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x,
                           double rel_h = 1e-4);

/// HM <= GM <= AM <= QM on random log-uniform a, y in [1e-2, 1e2].
/// Slack of one link (lo, hi) is (hi - lo) / max(|lo|, |hi|); worst_slack is
/// the minimum over links and samples, a violation is a slack below -1e-12.
VerificationReport check_inequality_chain(int K, long samples, std::uint64_t seed);
/// Minimum link slack for explicit a, y.
double chain_slack(const Vector& a, const AuxBlock& y);
/// Recomputes the chain slack stored in a check_inequality_chain witness.
double replay_inequality_chain(const nlohmann::json& witness);

/// Value and gradient agreement of the AM majorizer with the product at x0,
/// y from the closed form. worst_slack is the larger of the relative value
/// error and the relative gradient error (majorizer gradient by finite
/// differences). Violations: value > 1e-10 or gradient > 1e-5.
VerificationReport check_tangency(const ProductTerm& term, const Vector& x0);
double replay_tangency(const ProductTerm& term, const nlohmann::json& witness);

/// det of the Hessian of a1 y1 y2 + a2 y2/y1 + a3/y2^2 (three times the
/// K = 3 AM bound) in (y1, y2):
///   12 a2 a3 y1^-3 y2^-3 - (a1 - a2 y1^-2)^2
double hessian_det_m2(const Vector& a, double y1, double y2);

struct HessianWitness {
  Vector f;
  Vector y;
  double det_m2 = 0.0;
  double det_fd = 0.0;  ///< same determinant from a finite-difference Hessian
};

/// Searches f = (1,1,1), y = (t,t), t = 1, 2, ... for det M2 < 0.
/// Throws NumericalFailure if no witness is found (or FD disagrees in sign).
HessianWitness hessian_counterexample_k3();

/// Second central difference of the AM bound along y_k (1-based) at 100
/// log-spaced points in [y_k/4, 4 y_k], step 1e-4 * y_k. worst_slack is the
/// smallest curvature normalized by bound/y_k^2; violations are d2 <= 0.
VerificationReport check_coordinate_convexity(const Vector& f, const AuxBlock& y, int k,
                                              int points = 100);
double replay_coordinate_convexity(const nlohmann::json& witness);

struct CoordinateDescentResult {
  AuxBlock y;
  int cycles = 0;
  std::vector<double> values;  ///< AM bound after each cycle, values[0] at y0
};

/// Cyclic exact minimization of the AM bound over one y_k at a time, each by
/// bisection on the sign of the partial derivative in log y. Stops when a
/// cycle lowers the bound by less than tol relative. Throws NumericalFailure
/// after max_cycles.
CoordinateDescentResult coordinate_descent_y(const Vector& a, const AuxBlock& y0, double tol,
                                             int max_cycles = 100000);

/// d AM / d y_k (1-based k) at y.
double am_partial(const Vector& a, const AuxBlock& y, int k);

/// Flags a term whose closed-form y (on raw factor values) is the same to
/// 1e-9 relative at every probe. worst_slack is the largest relative change
/// from the first probe; violations counts probes that differ; fewer than
/// two probes gives an inconclusive report.
VerificationReport detect_constant_y(const ProductTerm& term, const std::vector<Vector>& xs);
double replay_constant_y(const ProductTerm& term, const nlohmann::json& witness);

/// c exp(v.x) (1 + |x - m|^2) with random c, v, m; always positive.
SmoothScalarField random_poly_exp_field(int dimension, Rng& rng);

}  // namespace mpsca
