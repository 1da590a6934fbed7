#include "mpsca/cases/quantum.hpp"

#include <cmath>
#include <limits>

namespace mpsca::cases {
namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr double kMinTaylorPoint = 1e-6;

Point2 head2(const Vector& z) { return {z[0], z[1]}; }

Point2 unit(const Point2& v) {
  const double n = v.norm();
  return n > 0.0 ? Point2(v / n) : Point2::Zero();
}

}  // namespace

void QuantumConfig::validate() const {
  if (nodes.size() < 2) throw InvalidArgument("quantum config: need N >= 2 nodes");
  for (const auto& u : nodes)
    if (!u.allFinite()) throw InvalidArgument("quantum config: non-finite node");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if ((nodes[i] - nodes[j]).norm() == 0.0) throw InvalidArgument("quantum config: coincident nodes");
  const std::size_t M = nodes.size() * (nodes.size() - 1) / 2;
  if (!alpha.empty() && alpha.size() != M)
    throw InvalidArgument("quantum config: alpha needs one entry per node pair");
  for (double a : alpha)
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("quantum config: alpha must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("quantum config: beta must be > 0");
  if (!std::isfinite(eta)) throw InvalidArgument("quantum config: eta must be finite");
}

QuantumProblem build_quantum_problem(const QuantumConfig& cfg) {
  cfg.validate();
  std::vector<NodePair> pairs;
  const int N = static_cast<int>(cfg.nodes.size());
  for (int n = 0; n < N; ++n)
    for (int np = n + 1; np < N; ++np) pairs.push_back({n, np});
  QuantumConfig full = cfg;
  if (full.alpha.empty()) full.alpha.assign(pairs.size(), 1.0);
  std::vector<Interval> box(2);
  for (std::size_t m = 0; m < pairs.size(); ++m) box.push_back(Interval{0.0, Interval{}.upper});
  FeasibleRegion region(std::move(box));
  return {std::move(full), std::move(pairs), std::move(region)};
}

double QuantumProblem::distance_gap(const Point2& q, int m) const {
  const NodePair& p = pairs[static_cast<std::size_t>(m)];
  return std::abs((q - cfg.nodes[static_cast<std::size_t>(p.first)]).norm() -
                  (q - cfg.nodes[static_cast<std::size_t>(p.second)]).norm());
}

double QuantumProblem::objective(const Vector& z) const {
  if (z.size() != 2 + num_pairs()) throw InvalidArgument("quantum: point dimension mismatch");
  const Point2 q = head2(z);
  double v = 0.0;
  for (int m = 0; m < num_pairs(); ++m) {
    const NodePair& p = pairs[static_cast<std::size_t>(m)];
    const double sum = (q - cfg.nodes[static_cast<std::size_t>(p.first)]).norm() +
                       (q - cfg.nodes[static_cast<std::size_t>(p.second)]).norm();
    v += std::pow(10.0, cfg.eta / 10.0 * sum + cfg.beta * z[2 + m]) /
         cfg.alpha[static_cast<std::size_t>(m)];
  }
  return v;
}

Vector QuantumProblem::objective_gradient(const Vector& z) const {
  const Point2 q = head2(z);
  Vector g = Vector::Zero(z.size());
  for (int m = 0; m < num_pairs(); ++m) {
    const NodePair& p = pairs[static_cast<std::size_t>(m)];
    const Point2 a = q - cfg.nodes[static_cast<std::size_t>(p.first)];
    const Point2 b = q - cfg.nodes[static_cast<std::size_t>(p.second)];
    const double term = std::pow(10.0, cfg.eta / 10.0 * (a.norm() + b.norm()) + cfg.beta * z[2 + m]) /
                        cfg.alpha[static_cast<std::size_t>(m)] * kLn10;
    g.head(2) += term * cfg.eta / 10.0 * (unit(a) + unit(b));
    g[2 + m] += term * cfg.beta;
  }
  return g;
}

Vector QuantumProblem::lift(const Point2& q) const {
  Vector z(2 + num_pairs());
  z.head(2) = q;
  for (int m = 0; m < num_pairs(); ++m) z[2 + m] = distance_gap(q, m);
  return z;
}

double QuantumProblem::reduced_objective(const Point2& q) const { return objective(lift(q)); }

double QuantumProblem::max_violation(const Vector& z) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < num_pairs(); ++m) worst = std::max(worst, distance_gap(head2(z), m) - z[2 + m]);
  return worst;
}

double TransformedConstraint::lhs(const Point2& q) const {
  return c1 * (q - u).squaredNorm() + c2 * (q - u_prime).squaredNorm();
}

double TransformedConstraint::rhs(double r) const { return r0 * r0 + 2.0 * r0 * (r - r0); }

Point2 TransformedConstraint::lhs_gradient(const Point2& q) const {
  return 2.0 * c1 * (q - u) + 2.0 * c2 * (q - u_prime);
}

TransformedConstraint transform_quantum_constraint(const QuantumProblem& problem, int pair,
                                                   const Point2& q0, double r0) {
  if (pair < 0 || pair >= problem.num_pairs()) throw InvalidArgument("quantum: pair index out of range");
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw InvalidArgument("quantum: r0 must be > 0");
  const NodePair& p = problem.pairs[static_cast<std::size_t>(pair)];
  TransformedConstraint t;
  t.u = problem.cfg.nodes[static_cast<std::size_t>(p.first)];
  t.u_prime = problem.cfg.nodes[static_cast<std::size_t>(p.second)];
  const double d0 = (q0 - t.u).norm();
  const double d0p = (q0 - t.u_prime).norm();
  if (d0 == 0.0 || d0p == 0.0) throw DomainViolation("quantum: q0 coincides with a node");
  t.y = -d0p / (2.0 * d0);
  t.r0 = r0;
  t.c1 = 1.0 + 2.0 * t.y;
  t.c2 = 1.0 + 1.0 / (2.0 * t.y);
  return t;
}

QuantumRun run_quantum_sca(const QuantumProblem& problem, const Point2& q0, const SCAConfig& cfg) {
  cfg.validate();
  if (!q0.allFinite()) throw InvalidArgument("quantum: non-finite q0");
  for (const auto& u : problem.cfg.nodes)
    if ((q0 - u).norm() == 0.0) throw DomainViolation("quantum: q0 coincides with a node");

  QuantumRun run;
  const int M = problem.num_pairs();
  BarrierOptions barrier;
  barrier.inner_tolerance = cfg.subsolver_tolerance;
  barrier.inner_cap = cfg.subsolver_max_iterations;

  auto step = [&](const Vector& z) {
    SCAStep s;
    const Point2 q = head2(z);
    std::vector<TransformedConstraint> transformed;
    std::vector<SmoothConstraint> constraints;
    Vector start = z;
    for (int m = 0; m < M; ++m) {
      const double gap = problem.distance_gap(q, m);
      const double r0 = std::max(gap, kMinTaylorPoint);
      transformed.push_back(transform_quantum_constraint(problem, m, q, r0));
      s.y.emplace_back(std::vector<double>{transformed.back().y}, Orientation::Negative);
      // strictly inside the transformed set: lhs(q) equals gap^2 there
      const double r_equal = (gap * gap + r0 * r0) / (2.0 * r0);
      start[2 + m] = r_equal + 1e-3 * (1.0 + r_equal);
    }
    for (int m = 0; m < M; ++m) {
      const TransformedConstraint& t = transformed[static_cast<std::size_t>(m)];
      constraints.push_back(
          {[t, m](const Vector& x) { return t.value(head2(x), x[2 + m]); },
           [t, m](const Vector& x) {
             Vector g = Vector::Zero(x.size());
             g.head(2) = t.lhs_gradient(head2(x));
             g[2 + m] = -2.0 * t.r0;
             return g;
           }});
    }
    SmoothObjective f{[&](const Vector& x) { return problem.objective(x); },
                      [&](const Vector& x) { return problem.objective_gradient(x); }};
    const SubsolveResult r = minimize_with_barrier(f, constraints, problem.region, start, barrier);
    s.subsolver_iterations = r.iterations;
    s.aux_updates = 2L * M;
    if (problem.max_violation(r.x_star) > 1e-9) ++run.raw_infeasible;

    // halve the move until the true objective decreases
    const Point2 target = head2(r.x_star);
    const double current = problem.reduced_objective(q);
    double gamma = 1.0;
    for (int h = 0; h <= 40; ++h, gamma *= 0.5) {
      const Point2 candidate = q + gamma * (target - q);
      if (problem.reduced_objective(candidate) < current) {
        s.x_next = problem.lift(candidate);
        return s;
      }
    }
    s.outcome = SCAStep::Outcome::Stalled;
    return s;
  };
  run.trace = run_sca_loop([&](const Vector& z) { return problem.objective(z); },
                           problem.lift(q0), cfg, step);
  return run;
}

std::pair<Point2, double> quantum_grid_minimum(const QuantumProblem& problem, int points) {
  if (points < 3) throw InvalidArgument("quantum grid: need >= 3 points per axis");
  Point2 lo = problem.cfg.nodes.front(), hi = lo;
  for (const auto& u : problem.cfg.nodes) {
    lo = lo.cwiseMin(u);
    hi = hi.cwiseMax(u);
  }
  const double pad = 0.25 * std::max(1.0, (hi - lo).maxCoeff());
  lo.array() -= pad;
  hi.array() += pad;

  Point2 best_q = lo;
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 4; ++round) {
    const Point2 step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j < points; ++j) {
        const Point2 q(lo[0] + i * step[0], lo[1] + j * step[1]);
        const double v = problem.reduced_objective(q);
        if (v < best) {
          best = v;
          best_q = q;
        }
      }
    }
    lo = best_q - 5.0 * step;
    hi = best_q + 5.0 * step;
  }
  return {best_q, best};
}

}  // namespace mpsca::cases
