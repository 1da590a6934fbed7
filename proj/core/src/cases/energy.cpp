#include "mpsca/cases/energy.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mpsca::cases {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct RateModel {
  int n, users;
  double b_max, p_max, c;  // c = g / sigma^2

  double value(const Vector& x) const {
    const double b = b_max * x[n], p = p_max * x[users + n];
    return b * std::log1p(c * p / b) / kLn2;
  }
  Vector gradient(const Vector& x) const {
    const double b = b_max * x[n], p = p_max * x[users + n];
    const double s = c * p / b;
    Vector g = Vector::Zero(x.size());
    g[n] = b_max * (std::log1p(s) / kLn2 - s / ((1.0 + s) * kLn2));
    g[users + n] = p_max * c / ((1.0 + s) * kLn2);
    return g;
  }
  /// diagonal of the x-Hessian of the rate
  Vector curvature(const Vector& x) const {
    const double b = b_max * x[n], p = p_max * x[users + n];
    const double s = c * p / b;
    const double denom = b * (1.0 + s) * (1.0 + s) * kLn2;
    Vector h = Vector::Zero(x.size());
    h[n] = -b_max * b_max * s * s / denom;
    h[users + n] = -p_max * p_max * c * c / denom;
    return h;
  }
};

RateModel rate_model(const EnergyConfig& cfg, int n) {
  return {n, cfg.users, cfg.b_max, cfg.p_max,
          cfg.gains[static_cast<std::size_t>(n)] / cfg.noise_psd};
}

void require_positive(const std::vector<double>& v, std::size_t size, const char* what) {
  if (v.size() != size) throw InvalidArgument(std::string("energy config: ") + what + " size mismatch");
  for (double e : v)
    if (!(e > 0.0) || !std::isfinite(e))
      throw InvalidArgument(std::string("energy config: ") + what + " must be > 0");
}

}  // namespace

void EnergyConfig::validate() const {
  if (users < 1) throw InvalidArgument("energy config: need N >= 1");
  const auto n = static_cast<std::size_t>(users);
  require_positive(data_bits, n, "data_bits");
  require_positive(gains, n, "gains");
  if (!distances_m.empty()) require_positive(distances_m, n, "distances_m");
  for (double v : {noise_psd, b_max, p_max})
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument("energy config: noise_psd, b_max, p_max must be > 0");
}

double path_loss_db(double distance_m, PathLossBase base) {
  if (!(distance_m > 0.0)) throw InvalidArgument("path loss: distance must be > 0");
  const double km = distance_m / 1000.0;
  return 128.1 + 37.6 * (base == PathLossBase::Log10 ? std::log10(km) : std::log2(km));
}

EnergyConfig make_energy_config(int users, std::uint64_t seed, PathLossBase base) {
  if (users < 1) throw InvalidArgument("energy config: need N >= 1");
  EnergyConfig cfg;
  cfg.users = users;
  cfg.seed = seed;
  cfg.path_loss_base = base;
  Rng rng(seed);
  for (int n = 0; n < users; ++n) {
    const double d = rng.uniform(50.0, 500.0);
    cfg.distances_m.push_back(d);
    cfg.data_bits.push_back(rng.uniform(500.0, 2000.0) * 8.0 * 1024.0);
    cfg.gains.push_back(std::pow(10.0, -path_loss_db(d, base) / 10.0) * rng.exponential());
  }
  return cfg;
}

double EnergyProblem::rate(const Vector& x, int n) const { return rate_model(cfg, n).value(x); }

Vector EnergyProblem::rate_gradient(const Vector& x, int n) const {
  return rate_model(cfg, n).gradient(x);
}

Vector EnergyProblem::average_allocation() const {
  Vector x(2 * users());
  x.head(users()).setConstant(1.0 / users());
  x.tail(users()).setOnes();
  return x;
}

EnergyProblem build_energy_problem(const EnergyConfig& cfg) {
  cfg.validate();
  const int N = cfg.users;
  std::vector<ProductTerm> terms;
  for (int n = 0; n < N; ++n) {
    const double d = cfg.data_bits[static_cast<std::size_t>(n)];
    Vector a = Vector::Zero(2 * N);
    a[N + n] = d * cfg.p_max;
    SmoothScalarField energy_rate_numerator = fields::affine(a, 0.0, true);
    const RateModel model = rate_model(cfg, n);
    SmoothScalarField inverse_rate(
        "1/rate", [model](const Vector& x) { return 1.0 / model.value(x); },
        [model](const Vector& x) {
          const double r = model.value(x);
          return (-model.gradient(x) / (r * r)).eval();
        },
        true);
    terms.emplace_back(std::vector<SmoothScalarField>{energy_rate_numerator, inverse_rate});
  }
  std::vector<Interval> box(static_cast<std::size_t>(2 * N), Interval{0.0, 1.0, true, false});
  Vector ones = Vector::Zero(2 * N);
  ones.head(N).setOnes();
  return {cfg, CompositeObjective(std::nullopt, std::move(terms)),
          FeasibleRegion(std::move(box), {LinearConstraint{ones, 1.0}})};
}

std::vector<double> energy_tangent_y(const EnergyProblem& problem, const Vector& x) {
  std::vector<double> y;
  for (int n = 0; n < problem.users(); ++n) {
    const double A = problem.cfg.data_bits[static_cast<std::size_t>(n)] * problem.power(x, n);
    y.push_back(ratio_tangent_y(A, problem.rate(x, n)));
  }
  return y;
}

SmoothObjective energy_surrogate(const EnergyProblem& problem, std::vector<double> y) {
  if (static_cast<int>(y.size()) != problem.users())
    throw InvalidArgument("energy surrogate: one y per user required");
  auto value = [&problem, y](const Vector& x) {
    double v = 0.0;
    for (int n = 0; n < problem.users(); ++n) {
      const double A = problem.cfg.data_bits[static_cast<std::size_t>(n)] * problem.power(x, n);
      const double R = problem.rate(x, n);
      if (!(R > 0.0)) return std::numeric_limits<double>::infinity();
      v += ratio_majorizer_k2(A, R, y[static_cast<std::size_t>(n)]);
    }
    return v;
  };
  auto gradient = [&problem, y](const Vector& x) {
    const int N = problem.users();
    Vector g = Vector::Zero(x.size());
    for (int n = 0; n < N; ++n) {
      const double yn = y[static_cast<std::size_t>(n)];
      const double d = problem.cfg.data_bits[static_cast<std::size_t>(n)];
      const double A = d * problem.power(x, n);
      const double R = problem.rate(x, n);
      g[N + n] += 2.0 * yn * A * d * problem.cfg.p_max;
      g -= problem.rate_gradient(x, n) / (2.0 * yn * R * R * R);
    }
    return g;
  };
  auto curvature = [&problem, y](const Vector& x) {
    const int N = problem.users();
    Vector h = Vector::Zero(x.size());
    for (int n = 0; n < N; ++n) {
      const double yn = y[static_cast<std::size_t>(n)];
      const double d = problem.cfg.data_bits[static_cast<std::size_t>(n)];
      const RateModel model = rate_model(problem.cfg, n);
      const double R = model.value(x);
      const Vector dR = model.gradient(x);
      h[N + n] += 2.0 * yn * d * d * problem.cfg.p_max * problem.cfg.p_max;
      h += (1.5 / (yn * R * R * R * R)) * dR.cwiseProduct(dR) -
           (0.5 / (yn * R * R * R)) * model.curvature(x);
    }
    return h;
  };
  return {value, gradient, curvature};
}

SCATrace run_energy_sca(const EnergyProblem& problem, const SCAConfig& cfg) {
  cfg.validate();
  const Vector x0 = problem.average_allocation();
  auto step = [&](const Vector& x) {
    SCAStep s;
    const std::vector<double> y = energy_tangent_y(problem, x);
    for (double v : y) s.y.emplace_back(std::vector<double>{v});
    const SubsolveResult r = minimize_convex(energy_surrogate(problem, y), problem.region, x,
                                             cfg.subsolver_tolerance, cfg.subsolver_max_iterations);
    s.x_next = r.x_star;
    s.subsolver_iterations = r.iterations;
    s.aux_updates = 2L * problem.users();
    return s;
  };
  return run_sca_loop([&](const Vector& x) { return problem.objective.value(x); }, x0, cfg, step);
}

SgdResult sgd_baseline(const CompositeObjective& objective, const FeasibleRegion& region,
                       const Vector& x0, const SgdConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) throw InvalidArgument("sgd: learning rate must be > 0");
  if (cfg.iterations < 0) throw InvalidArgument("sgd: negative iteration count");
  if (!region.contains(x0, 1e-9)) throw InvalidArgument("sgd: x0 is infeasible");
  const int terms = objective.num_terms();
  const int batch = cfg.batch <= 0 || cfg.batch > terms ? terms : cfg.batch;

  Rng rng(cfg.seed);
  std::vector<int> order(static_cast<std::size_t>(terms));
  std::iota(order.begin(), order.end(), 0);

  SgdResult result;
  result.x = x0;
  const double initial = objective.value(x0);
  result.objective.push_back(initial);
  for (int it = 0; it < cfg.iterations; ++it) {
    Vector g = objective.convex_part().gradient(result.x);
    // partial Fisher-Yates picks the batch
    for (int i = 0; i < batch; ++i) {
      const auto j = i + static_cast<int>(rng.next() % static_cast<std::uint64_t>(terms - i));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
      g += (static_cast<double>(terms) / batch) *
           objective.terms()[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].gradient(result.x);
    }
    if (!g.allFinite()) {
      result.diverged = true;
      break;
    }
    result.x = project(result.x - cfg.learning_rate * g, region);
    double v;
    try {
      v = objective.value(result.x);
    } catch (const DomainViolation&) {
      v = std::numeric_limits<double>::infinity();
    }
    result.objective.push_back(v);
    if (!std::isfinite(v) || v > 1e6 * std::abs(initial)) {
      result.diverged = true;
      break;
    }
  }
  return result;
}

SgdResult energy_sgd_multistart(const EnergyProblem& problem, int starts, const SgdConfig& cfg) {
  if (starts < 1) throw InvalidArgument("multistart: need >= 1 start");
  Rng rng(cfg.seed);
  const int N = problem.users();
  SgdResult best;
  for (int s = 0; s < starts; ++s) {
    Vector x0(2 * N);
    double total = 0.0;
    for (int n = 0; n < N; ++n) total += (x0[n] = rng.uniform(0.05, 1.0));
    x0.head(N) /= total;
    for (int n = 0; n < N; ++n) x0[N + n] = rng.uniform(0.05, 1.0);
    x0 = project(x0, problem.region);
    SgdConfig run = cfg;
    run.seed = rng.next();
    SgdResult r = sgd_baseline(problem.objective, problem.region, x0, run);
    if (r.diverged) continue;
    if (best.objective.empty() || r.objective.back() < best.objective.back()) best = std::move(r);
  }
  if (best.objective.empty()) throw NumericalFailure("multistart: every start diverged");
  return best;
}

std::pair<Vector, double> energy_grid_minimum_single(const EnergyProblem& problem, int points) {
  if (problem.users() != 1) throw InvalidArgument("energy grid: only N = 1 is supported");
  if (points < 2) throw InvalidArgument("energy grid: need >= 2 points per axis");
  const double b_lo = problem.region.lower()[0];
  const double p_lo = problem.region.lower()[1];
  Vector best_x(2);
  double best = std::numeric_limits<double>::infinity();
  Vector x(2);
  for (int i = 0; i < points; ++i) {
    x[0] = b_lo + (1.0 - b_lo) * i / (points - 1);
    for (int j = 0; j < points; ++j) {
      x[1] = p_lo * std::pow(1.0 / p_lo, static_cast<double>(j) / (points - 1));
      const double v = problem.objective.value(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
  }
  return {best_x, best};
}

}  // namespace mpsca::cases
