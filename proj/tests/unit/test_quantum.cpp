#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mpsca/cases/quantum.hpp"
#include "mpsca/verify.hpp"

using namespace mpsca;
using namespace mpsca::cases;
using testing::rel;

namespace {

QuantumProblem pair_problem() {
  QuantumConfig cfg;
  cfg.nodes = {Point2(0, 0), Point2(2, 0)};
  return build_quantum_problem(cfg);
}

QuantumProblem triangle_problem() {
  QuantumConfig cfg;
  cfg.nodes = {Point2(0, 0), Point2(1, 0), Point2(0.5, std::sqrt(3.0) / 2)};
  cfg.alpha = {1.0, 2.0, 0.5};
  return build_quantum_problem(cfg);
}

}  // namespace

TEST_CASE("pairs and region") {
  const auto p = triangle_problem();
  CHECK(p.num_pairs() == 3);
  CHECK(p.region.dimension() == 5);
  CHECK(p.pairs[0].first == 0);
  CHECK(p.pairs[2].second == 2);
}

TEST_CASE("distance gap on the bisector and at a node") {
  const auto p = pair_problem();
  CHECK(p.distance_gap(Point2(1.0, 3.0), 0) == doctest::Approx(0.0));
  CHECK(p.distance_gap(Point2(0.0, 0.0), 0) == doctest::Approx(2.0));
  const auto t = transform_quantum_constraint(p, 0, Point2(1.0, 3.0), 1e-6);
  CHECK(std::abs(t.c1) < 1e-15);
  CHECK(std::abs(t.c2) < 1e-15);
  CHECK(std::abs(t.lhs(Point2(-4.0, 7.0))) < 1e-12);
}

TEST_CASE("objective matches a direct evaluation") {
  const auto p = triangle_problem();
  Vector z(5);
  z << 0.2, 0.7, 0.3, 0.1, 0.9;
  double expect = 0.0;
  for (int m = 0; m < 3; ++m) {
    const auto& u = p.cfg.nodes[static_cast<std::size_t>(p.pairs[m].first)];
    const auto& v = p.cfg.nodes[static_cast<std::size_t>(p.pairs[m].second)];
    const Point2 q(z[0], z[1]);
    expect += std::pow(10.0, 0.02 * ((q - u).norm() + (q - v).norm()) + z[2 + m]) / p.cfg.alpha[m];
  }
  CHECK(rel(p.objective(z), expect) < 1e-12);
  const Vector fd = fd_gradient([&](const Vector& x) { return p.objective(x); }, z);
  CHECK((fd - p.objective_gradient(z)).norm() < 1e-6 * fd.norm());
  CHECK(rel(p.reduced_objective(Point2(0.2, 0.7)), p.objective(p.lift(Point2(0.2, 0.7)))) < 1e-15);
}

TEST_CASE("transformed constraint coefficients and tangency") {
  const auto p = pair_problem();
  Rng rng(9);
  for (int s = 0; s < 100; ++s) {
    const Point2 q0(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double d0 = q0.norm(), d0p = (q0 - Point2(2, 0)).norm();
    const double gap = std::abs(d0 - d0p);
    const double r0 = std::max(gap, 1e-3);
    const auto t = transform_quantum_constraint(p, 0, q0, r0);
    CHECK(rel(t.c1, 1 - d0p / d0) < 1e-12);
    CHECK(rel(t.c2, 1 - d0 / d0p) < 1e-12);
    CHECK(std::abs(t.lhs(q0) - gap * gap) <= 1e-12 * (1 + gap * gap));
    const Vector x0 = q0;
    const Vector fd = fd_gradient(
        [&](const Vector& q) {
          const double g = p.distance_gap(Point2(q[0], q[1]), 0);
          return g * g;
        },
        x0);
    CHECK((fd - Vector(t.lhs_gradient(q0))).norm() <= 1e-6 * (1 + fd.norm()));
    CHECK(t.rhs(r0) == doctest::Approx(r0 * r0));

    // lhs under-estimates the squared gap, rhs under-estimates r^2
    const Point2 q(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double g = p.distance_gap(q, 0);
    CHECK(t.lhs(q) <= g * g + 1e-12 * (1 + g * g));
    const double r = rng.uniform(0, 3);
    CHECK(t.rhs(r) <= r * r + 1e-12);
  }
}

TEST_CASE("transformed set is larger than the true one") {
  // feasible for the transformed constraint, infeasible for the original
  const auto p = pair_problem();
  const auto t = transform_quantum_constraint(p, 0, Point2(0.5, 0.0), 1.0);
  const Point2 q(2.0, 0.0);
  const double r = 1.0;
  CHECK(t.value(q, r) <= 0.0);
  CHECK(p.distance_gap(q, 0) > r);
}

TEST_CASE("config validation") {
  QuantumConfig cfg;
  cfg.nodes = {Point2(0, 0)};
  CHECK_THROWS_AS(build_quantum_problem(cfg), InvalidArgument);
  cfg.nodes = {Point2(0, 0), Point2(0, 0)};
  CHECK_THROWS_AS(build_quantum_problem(cfg), InvalidArgument);
  cfg.nodes = {Point2(0, 0), Point2(1, 0)};
  cfg.alpha = {1.0, 1.0};
  CHECK_THROWS_AS(build_quantum_problem(cfg), InvalidArgument);
  cfg.alpha = {-1.0};
  CHECK_THROWS_AS(build_quantum_problem(cfg), InvalidArgument);
  const auto p = pair_problem();
  CHECK_THROWS_AS(transform_quantum_constraint(p, 0, Point2(0, 0), 1.0), DomainViolation);
  CHECK_THROWS_AS(transform_quantum_constraint(p, 1, Point2(1, 1), 1.0), InvalidArgument);
  CHECK_THROWS_AS(transform_quantum_constraint(p, 0, Point2(1, 1), 0.0), InvalidArgument);
  CHECK_THROWS_AS(run_quantum_sca(p, Point2(2, 0), SCAConfig{}), DomainViolation);
}

TEST_CASE("SCA on three nodes descends through feasible points to the centroid") {
  QuantumConfig cfg;
  cfg.nodes = {Point2(0, 0), Point2(1, 0), Point2(0.5, std::sqrt(3.0) / 2)};
  const auto p = build_quantum_problem(cfg);
  const auto run = run_quantum_sca(p, Point2(0.3, 0.5), SCAConfig{});
  double prev = run.trace.initial_objective;
  for (const auto& it : run.trace.iterations) {
    CHECK(it.objective < prev);
    CHECK(p.max_violation(it.x) <= 1e-12);
    prev = it.objective;
  }
  const Vector& z = run.trace.final_x();
  CHECK(std::abs(z[0] - 0.5) < 1e-2);
  CHECK(std::abs(z[1] - std::sqrt(3.0) / 6) < 1e-2);
  const auto [q_grid, v_grid] = quantum_grid_minimum(p);
  CHECK(std::abs(run.trace.final_objective() - v_grid) / v_grid <= 1e-2);
  CHECK((q_grid - Point2(0.5, std::sqrt(3.0) / 6)).norm() < 1e-3);
}
