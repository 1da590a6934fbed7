#include <doctest.h>

#include "helpers.hpp"
#include "mpsca/bounds.hpp"
#include "mpsca/random.hpp"

using namespace mpsca;
using testing::rel;
using testing::vec;

TEST_CASE("transform_factors examples") {
  const Vector t1 = transform_factors(vec({1, 1}), AuxBlock({1.0}));
  CHECK(t1[0] == 1.0);
  CHECK(t1[1] == 1.0);
  const Vector t2 = transform_factors(vec({4, 1}), AuxBlock({0.5}));
  CHECK(t2[0] == doctest::Approx(2.0));
  CHECK(t2[1] == doctest::Approx(2.0));
  const Vector a = vec({1, 2, 3});
  const Vector t3 = transform_factors(a, closed_form_y(a));
  for (int k = 0; k < 3; ++k) CHECK(t3[k] == doctest::Approx(1.8171205928321397).epsilon(1e-12));
}

TEST_CASE("transform preserves the product") {
  Rng rng(5);
  for (int K = 2; K <= 8; ++K) {
    Vector a(K);
    std::vector<double> y(static_cast<std::size_t>(K) - 1);
    for (int k = 0; k < K; ++k) a[k] = rng.log_uniform(0.1, 10);
    for (auto& v : y) v = rng.log_uniform(0.1, 10);
    CHECK(rel(transform_factors(a, AuxBlock(y)).prod(), a.prod()) < 1e-12);
  }
}

TEST_CASE("transform_factors validation") {
  CHECK_THROWS_AS(transform_factors(vec({1, 2, 3}), AuxBlock({1.0})), InvalidArgument);
  CHECK_THROWS_AS(transform_factors(vec({1, -2}), AuxBlock({1.0})), InvalidArgument);
  CHECK_THROWS_AS(transform_factors(vec({1}), AuxBlock({1.0})), InvalidArgument);
  CHECK_THROWS_AS(transform_factors(vec({1, 2}), AuxBlock({-1.0}, Orientation::Negative)),
                  InvalidArgument);
}

TEST_CASE("mean_bound examples") {
  for (MeanKind k : {MeanKind::HM, MeanKind::GM, MeanKind::AM, MeanKind::QM})
    CHECK(mean_bound(vec({1, 1}), AuxBlock({1.0}), k).value == doctest::Approx(1.0));
  CHECK(mean_bound(vec({4, 1}), AuxBlock({1.0}), MeanKind::HM).value == doctest::Approx(1.6));
  CHECK(mean_bound(vec({4, 1}), AuxBlock({1.0}), MeanKind::GM).value == doctest::Approx(2.0));
  CHECK(mean_bound(vec({4, 1}), AuxBlock({1.0}), MeanKind::AM).value == doctest::Approx(2.5));
  CHECK(mean_bound(vec({4, 1}), AuxBlock({1.0}), MeanKind::QM).value ==
        doctest::Approx(2.9154759474226504));
  for (MeanKind k : {MeanKind::HM, MeanKind::GM, MeanKind::AM, MeanKind::QM})
    CHECK(mean_bound(vec({4, 1}), AuxBlock({0.5}), k).value == doctest::Approx(2.0));
}

TEST_CASE("GM is invariant to y and means coincide at the equalizer") {
  Rng rng(9);
  for (int K = 2; K <= 8; ++K) {
    Vector a(K);
    for (int k = 0; k < K; ++k) a[k] = rng.log_uniform(1e-2, 1e2);
    const double gm = std::pow(a.prod(), 1.0 / K);
    std::vector<double> y(static_cast<std::size_t>(K) - 1);
    for (auto& v : y) v = rng.log_uniform(1e-2, 1e2);
    CHECK(rel(mean_bound(a, AuxBlock(y), MeanKind::GM).value, gm) < 1e-12);
    const AuxBlock eq = recurrence_y(a);
    for (MeanKind k : {MeanKind::HM, MeanKind::GM, MeanKind::AM, MeanKind::QM})
      CHECK(rel(mean_bound(a, eq, k).value, gm) < 1e-12);
  }
}

TEST_CASE("recurrence_y examples") {
  CHECK(recurrence_y(vec({1, 4}))[0] == doctest::Approx(2.0));
  const AuxBlock ones = recurrence_y(vec({1, 1, 1}));
  CHECK(ones[0] == doctest::Approx(1.0));
  CHECK(ones[1] == doctest::Approx(1.0));
  const Vector a = vec({2, 3, 5, 7});
  const Vector t = transform_factors(a, recurrence_y(a));
  for (int k = 0; k < 4; ++k) CHECK(rel(t[k], std::pow(210.0, 0.25)) < 1e-12);
  CHECK_THROWS_AS(recurrence_y(vec({1, 0})), InvalidArgument);
  CHECK_THROWS_AS(recurrence_y(vec({1})), InvalidArgument);
}

TEST_CASE("closed_form_y examples") {
  CHECK(closed_form_y(vec({1, 4}))[0] == doctest::Approx(2.0));
  const AuxBlock y = closed_form_y(vec({1, 8, 27}));
  CHECK(rel(y[0], std::sqrt(8.0)) < 1e-14);
  CHECK(rel(y[1], std::cbrt(std::sqrt(8.0)) * std::cbrt(27.0 / 8.0)) < 1e-14);
  CHECK_THROWS_AS(closed_form_y(vec({1, -1})), InvalidArgument);
}

TEST_CASE("closed form matches recurrence up to K = 10") {
  Rng rng(21);
  for (int K = 2; K <= 10; ++K) {
    for (int s = 0; s < 200; ++s) {
      Vector a(K);
      for (int k = 0; k < K; ++k) a[k] = rng.log_uniform(1e-2, 1e2);
      const AuxBlock c = closed_form_y(a), r = recurrence_y(a);
      for (int k = 0; k < K - 1; ++k) CHECK(rel(c[k], r[k]) < 1e-12);
    }
  }
}

TEST_CASE("AM product majorizer examples") {
  ProductTerm unit({fields::constant(1.0), fields::constant(1.0)});
  CHECK(am_product_majorizer(unit, vec({0.3}), AuxBlock({1.0})) == doctest::Approx(1.0));

  ProductTerm two_one({fields::constant(2.0), fields::constant(1.0)});
  CHECK(am_product_majorizer(two_one, vec({0.0}), AuxBlock({0.5})) == doctest::Approx(2.0));

  ProductTerm k3({fields::constant(1.0), fields::constant(2.0), fields::constant(3.0)});
  CHECK(am_product_majorizer(k3, vec({0.0}), closed_form_y(vec({1, 8, 27}))) ==
        doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rel(am_product_majorizer(k3, vec({0.0}), tangent_aux(k3, vec({0.0}))), 6.0) < 1e-12);
}

TEST_CASE("AM majorizer stays above the product") {
  Rng rng(2);
  ProductTerm term({testing::square_field(), testing::exp_field(), fields::coordinate(0)});
  for (int s = 0; s < 1000; ++s) {
    const Vector x = vec({rng.uniform(0.1, 3.0)});
    const AuxBlock y({rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2)});
    CHECK(am_product_majorizer(term, x, y) >= term.value(x) * (1 - 1e-12));
  }
}

TEST_CASE("AM majorizer rejects negative terms") {
  ProductTerm neg({fields::constant(1.0), fields::constant(1.0)}, Sign::Minus);
  CHECK_THROWS_AS(am_product_majorizer(neg, vec({0.0}), AuxBlock({1.0})), InvalidArgument);
}

TEST_CASE("K = 2 specializations") {
  CHECK(ratio_majorizer_k2(1, 1, 0.5) == doctest::Approx(1.0));
  CHECK(ratio_majorizer_k2(2, 1, 0.25) == doctest::Approx(2.0));
  CHECK(ratio_majorizer_k2(2, 1, 1.0) == doctest::Approx(4.25));
  CHECK(ratio_tangent_y(2, 1) == doctest::Approx(0.25));

  CHECK(product_majorizer_k2(1, 1, 0.5) == doctest::Approx(1.0));
  CHECK(product_majorizer_k2(1, 4, 2) == doctest::Approx(4.0));
  CHECK(product_majorizer_k2(1, 4, 1) == doctest::Approx(5.0));
  CHECK(product_tangent_y(1, 4) == doctest::Approx(2.0));

  CHECK(reversed_bound_negative_product(1, 1, -1) == doctest::Approx(-1.0));
  CHECK(reversed_bound_negative_product(2, 1, -0.5) == doctest::Approx(-2.0));
  CHECK(reversed_bound_negative_product(2, 1, -1) == doctest::Approx(-2.5));
  CHECK(reversed_tangent_y(2, 1) == doctest::Approx(-0.5));

  CHECK_THROWS_AS(ratio_majorizer_k2(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(ratio_majorizer_k2(1, 1, -1), InvalidArgument);
  CHECK_THROWS_AS(product_majorizer_k2(1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(reversed_bound_negative_product(1, 1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(reversed_bound_negative_product(1, 1, 1.0), InvalidArgument);
}

TEST_CASE("K = 2 bounds hold on random samples") {
  Rng rng(8);
  for (int s = 0; s < 10000; ++s) {
    const double A = rng.log_uniform(1e-2, 1e2), B = rng.log_uniform(1e-2, 1e2);
    const double y = rng.log_uniform(1e-3, 1e3);
    CHECK(ratio_majorizer_k2(A, B, y) >= A / B * (1 - 1e-12));
    CHECK(product_majorizer_k2(A, B, y) >= A * B * (1 - 1e-12));
    CHECK(reversed_bound_negative_product(A, B, -y) <= -A * B * (1 - 1e-12));
  }
  CHECK(rel(ratio_majorizer_k2(3, 5, ratio_tangent_y(3, 5)), 0.6) < 1e-14);
  CHECK(rel(product_majorizer_k2(3, 5, product_tangent_y(3, 5)), 15.0) < 1e-14);
  CHECK(rel(reversed_bound_negative_product(3, 5, reversed_tangent_y(3, 5)), -15.0) < 1e-14);
}
