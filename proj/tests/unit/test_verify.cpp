#include <doctest.h>

#include <Eigen/LU>

#include "helpers.hpp"
#include "mpsca/cases/example1d.hpp"
#include "mpsca/verify.hpp"

using namespace mpsca;
using testing::rel;
using testing::vec;

TEST_CASE("inequality chain, K = 2, 1e5 samples") {
  const auto r = check_inequality_chain(2, 100000, 1);
  CHECK(r.violations == 0);
  CHECK(r.samples == 100000);
  CHECK(r.worst_slack >= -1e-12);
  CHECK(std::abs(replay_inequality_chain(r.witness) - r.worst_slack) <= 1e-12);
}

TEST_CASE("inequality chain, K = 8, 1e4 samples") {
  const auto r = check_inequality_chain(8, 10000, 2);
  CHECK(r.violations == 0);
  CHECK(std::abs(replay_inequality_chain(r.witness) - r.worst_slack) <= 1e-12);
}

TEST_CASE("chain slack is zero at equality") {
  CHECK(chain_slack(vec({1, 1}), AuxBlock({1.0})) == 0.0);
}

TEST_CASE("inequality chain argument checks") {
  CHECK_THROWS_AS(check_inequality_chain(1, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(check_inequality_chain(9, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(check_inequality_chain(3, 0, 1), InvalidArgument);
}

TEST_CASE("report JSON schema") {
  const auto j = to_json(check_inequality_chain(3, 10, 77));
  for (const char* key : {"name", "samples", "violations", "worst_slack", "witness", "seed"})
    CHECK(j.contains(key));
  CHECK(j["seed"] == 77);
}

TEST_CASE("tangency of (x, x) at 3") {
  ProductTerm term({fields::coordinate(0), fields::coordinate(0)});
  const Vector x0 = vec({3.0});
  const AuxBlock y = tangent_aux(term, x0);
  CHECK(am_product_majorizer(term, x0, y) == doctest::Approx(9.0));
  CHECK(am_product_majorizer_gradient(term, x0, y)[0] == doctest::Approx(6.0));
  const auto r = check_tangency(term, x0);
  CHECK(r.violations == 0);
  CHECK(replay_tangency(term, r.witness) == r.worst_slack);
}

TEST_CASE("tangency of the example's three-factor term at 2") {
  const auto ex = cases::build_example1d();
  const auto r = check_tangency(ex.objective.terms()[1], vec({2.0}));
  CHECK(r.violations == 0);
  CHECK(r.worst_slack < 1e-5);
}

TEST_CASE("tangency of random K = 5 polynomial-exponential terms") {
  Rng rng(31);
  for (int s = 0; s < 20; ++s) {
    std::vector<SmoothScalarField> factors;
    for (int k = 0; k < 5; ++k) factors.push_back(random_poly_exp_field(3, rng));
    ProductTerm term(std::move(factors));
    const Vector x0 = vec({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const auto r = check_tangency(term, x0);
    CHECK(r.violations == 0);
    CHECK(replay_tangency(term, r.witness) == r.worst_slack);
    // analytic majorizer gradient agrees with the product gradient too
    const Vector g = am_product_majorizer_gradient(term, x0, tangent_aux(term, x0));
    CHECK((g - term.gradient(x0)).norm() <= 1e-10 * term.gradient(x0).norm());
  }
}

TEST_CASE("random polynomial-exponential field gradient") {
  Rng rng(3);
  const auto f = random_poly_exp_field(2, rng);
  const Vector x = vec({0.3, -0.7});
  CHECK((fd_gradient([&](const Vector& z) { return f.value(z); }, x) - f.gradient(x)).norm() <
        1e-6 * f.gradient(x).norm());
}

TEST_CASE("det M2 examples") {
  CHECK(hessian_det_m2(vec({1, 1, 1}), 1, 1) == doctest::Approx(12.0));
  CHECK(hessian_det_m2(vec({1, 1, 1}), 10, 10) == doctest::Approx(12e-6 - 1 + 0.02 - 1e-4));
  CHECK(hessian_det_m2(vec({1, 1, 1}), 10, 10) < 0.0);
  CHECK_THROWS_AS(hessian_det_m2(vec({1, 1}), 1, 1), InvalidArgument);
}

TEST_CASE("det M2 matches a finite-difference Hessian away from the witness") {
  Rng rng(13);
  for (int s = 0; s < 50; ++s) {
    const Vector a = vec({rng.log_uniform(0.5, 2), rng.log_uniform(0.5, 2), rng.log_uniform(0.5, 2)});
    const Vector y = vec({rng.log_uniform(0.5, 2), rng.log_uniform(0.5, 2)});
    const auto scaled = [&](const Vector& z) {
      return 3.0 * mean_bound(a, AuxBlock({z[0], z[1]}), MeanKind::AM).value;
    };
    const double fd = fd_hessian(scaled, y).determinant();
    CHECK(std::abs(fd - hessian_det_m2(a, y[0], y[1])) < 1e-4 * (1 + std::abs(fd)));
  }
}

TEST_CASE("Hessian counterexample and per-coordinate convexity coexist") {
  const auto w = hessian_counterexample_k3();
  CHECK(w.det_m2 < 0.0);
  CHECK(w.det_fd < 0.0);
  CHECK(rel(w.det_fd, w.det_m2) < 1e-4);
  for (int k = 1; k <= 2; ++k) {
    const auto r = check_coordinate_convexity(w.f, AuxBlock({w.y[0], w.y[1]}), k);
    CHECK(r.violations == 0);
    CHECK(r.worst_slack > 0.0);
    CHECK(r.samples >= 100);
    CHECK(std::abs(replay_coordinate_convexity(r.witness) - r.worst_slack) <= 1e-12);
  }
}

TEST_CASE("coordinate convexity, K = 2 analytic curvature") {
  // (y + 1/y)/2 has second derivative 1/y^3
  const auto r = check_coordinate_convexity(vec({1, 1}), AuxBlock({1.0}), 1);
  CHECK(r.violations == 0);
  const double t = r.witness["t"].get<double>();
  const double bound = 0.5 * (t + 1 / t);
  CHECK(rel(r.worst_slack, (1 / (t * t * t)) * t * t / bound) < 1e-5);
}

TEST_CASE("coordinate convexity, random K = 6 near the equalizer") {
  Rng rng(17);
  for (int s = 0; s < 20; ++s) {
    Vector f(6);
    for (int k = 0; k < 6; ++k) f[k] = rng.log_uniform(0.5, 2);
    std::vector<double> y = closed_form_y(f).values();
    for (auto& v : y) v *= rng.log_uniform(0.5, 2);
    for (int k = 1; k <= 5; ++k) CHECK(check_coordinate_convexity(f, AuxBlock(y), k).violations == 0);
  }
}

TEST_CASE("coordinate convexity argument checks") {
  CHECK_THROWS_AS(check_coordinate_convexity(vec({1, 1}), AuxBlock({1.0}), 0), InvalidArgument);
  CHECK_THROWS_AS(check_coordinate_convexity(vec({1, 1}), AuxBlock({1.0}), 2), InvalidArgument);
  CHECK_THROWS_AS(check_coordinate_convexity(vec({1, 1, 1}), AuxBlock({1.0}), 1), InvalidArgument);
}

TEST_CASE("coordinate descent: equalizer is a fixed point") {
  const Vector a = vec({2, 3, 5, 7});
  const AuxBlock y0 = recurrence_y(a);
  const auto r = coordinate_descent_y(a, y0, 1e-14);
  for (int k = 0; k < y0.size(); ++k) CHECK(rel(r.y[k], y0[k]) < 1e-12);
}

TEST_CASE("coordinate descent reaches the GM floor") {
  const Vector a = vec({1, 2, 3});
  const auto r = coordinate_descent_y(a, AuxBlock({1.0, 1.0}), 1e-15);
  const double gm = std::cbrt(6.0);
  CHECK(r.values.back() >= gm * (1 - 1e-12));
  CHECK(r.values.back() <= gm * (1 + 1e-8));
  for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] <= r.values[i - 1]);
  for (int k = 1; k <= 2; ++k)
    CHECK(std::abs(am_partial(a, r.y, k)) * r.y[k - 1] <= 1e-7 * r.values.back());
}

TEST_CASE("coordinate descent from random K = 5 starts") {
  Rng rng(23);
  for (int s = 0; s < 50; ++s) {
    Vector a(5);
    std::vector<double> y0(4);
    for (int k = 0; k < 5; ++k) a[k] = rng.log_uniform(1e-2, 1e2);
    for (auto& v : y0) v = rng.log_uniform(1e-2, 1e2);
    const auto r = coordinate_descent_y(a, AuxBlock(y0), 1e-15);
    CHECK(r.values.back() <= r.values.front());
    for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] <= r.values[i - 1]);
  }
}

TEST_CASE("coordinate descent cycle cap") {
  CHECK_THROWS_AS(coordinate_descent_y(vec({1, 100, 1, 100, 1}), AuxBlock({1.0, 1.0, 1.0, 1.0}), 1e-15, 1),
                  NumericalFailure);
  CHECK_THROWS_AS(coordinate_descent_y(vec({1, 2}), AuxBlock({1.0}), 0.0), InvalidArgument);
}

TEST_CASE("limitation detector") {
  ProductTerm proportional({testing::square_field(), testing::scaled_square_field(3.0)});
  std::vector<Vector> probes{vec({0.5}), vec({1.0}), vec({2.0}), vec({4.0})};
  const auto flagged = detect_constant_y(proportional, probes);
  CHECK(flagged.flagged);
  CHECK_FALSE(flagged.inconclusive);
  CHECK(flagged.violations == 0);
  CHECK(rel(closed_form_y(proportional.factor_values(vec({2.0})))[0], std::sqrt(3.0)) < 1e-14);
  CHECK(replay_constant_y(proportional, flagged.witness) == flagged.worst_slack);

  ProductTerm varying({fields::coordinate(0), testing::exp_field()});
  const auto clear = detect_constant_y(varying, {vec({0.5}), vec({1.5})});
  CHECK_FALSE(clear.flagged);
  CHECK(clear.violations == 1);
  CHECK(replay_constant_y(varying, clear.witness) == clear.worst_slack);

  const auto single = detect_constant_y(proportional, {vec({1.0})});
  CHECK(single.inconclusive);
  CHECK_FALSE(single.flagged);
}
