#pragma once

#include <cstdint>
#include <vector>

#include "mpsca/random.hpp"
#include "mpsca/sca.hpp"

namespace mpsca::cases {

enum class PathLossBase { Log10, Log2 };

/// FDMA uplink, each user n sends d_n bits at power p_n over bandwidth b_n.
struct EnergyConfig {
  int users = 40;
  std::vector<double> data_bits;
  std::vector<double> gains;        ///< linear channel gains
  std::vector<double> distances_m;  ///< informational once gains are drawn
  double noise_psd = 3.981071705534973e-17;  ///< W/Hz, -134 dBm
  double b_max = 10e6;                        ///< Hz
  double p_max = 10.0;                        ///< W
  PathLossBase path_loss_base = PathLossBase::Log10;
  std::uint64_t seed = 1;

  void validate() const;
};

/// 128.1 + 37.6 log(d_km) dB
double path_loss_db(double distance_m, PathLossBase base);

/// Default parameters with distances U[50, 500] m, data U[500, 2000] KB and
/// gains 10^(-L/10) times an Exp(1) fading draw, all from `seed`.
EnergyConfig make_energy_config(int users, std::uint64_t seed,
                                PathLossBase base = PathLossBase::Log10);

/// Decision vector is x = (b/b_max, p/p_max) in (0, 1]^{2N} with
/// sum_n b_n/b_max <= 1. Objective in Joules.
struct EnergyProblem {
  EnergyConfig cfg;
  CompositeObjective objective;
  FeasibleRegion region;

  int users() const { return cfg.users; }
  double bandwidth(const Vector& x, int n) const { return cfg.b_max * x[n]; }
  double power(const Vector& x, int n) const { return cfg.p_max * x[cfg.users + n]; }
  /// b log2(1 + g p / (b sigma^2)) in bit/s
  double rate(const Vector& x, int n) const;
  /// x-gradient of rate(x, n)
  Vector rate_gradient(const Vector& x, int n) const;
  /// b_n = b_max/N, p_n = p_max
  Vector average_allocation() const;
};

EnergyProblem build_energy_problem(const EnergyConfig& cfg);

/// y_n = 1/(2 d_n p_n R_n): the ratio majorizer then touches d_n p_n / R_n.
std::vector<double> energy_tangent_y(const EnergyProblem& problem, const Vector& x);

/// sum_n y_n (d_n p_n)^2 + 1/(4 y_n R_n^2), convex in x for fixed y.
SmoothObjective energy_surrogate(const EnergyProblem& problem, std::vector<double> y);

SCATrace run_energy_sca(const EnergyProblem& problem, const SCAConfig& cfg);

struct SgdConfig {
  double learning_rate = 0.05;
  int iterations = 2000;
  int batch = 0;  ///< terms per step, 0 means all
  std::uint64_t seed = 1;
};

struct SgdResult {
  Vector x;
  std::vector<double> objective;  ///< objective[0] at the start point
  bool diverged = false;          ///< exceeded 1e6 x initial or went non-finite
};

/// Projected stochastic gradient on the original objective: each step uses
/// the convex part plus a random batch of product terms, rescaled.
SgdResult sgd_baseline(const CompositeObjective& objective, const FeasibleRegion& region,
                       const Vector& x0, const SgdConfig& cfg);

/// Best final objective over `starts` random feasible start points.
SgdResult energy_sgd_multistart(const EnergyProblem& problem, int starts, const SgdConfig& cfg);

/// Brute-force search for N = 1 over a points x points grid, p log-spaced.
/// Returns {argmin, value}.
std::pair<Vector, double> energy_grid_minimum_single(const EnergyProblem& problem, int points);

}  // namespace mpsca::cases
