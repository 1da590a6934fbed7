#pragma once

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mpsca/errors.hpp"

namespace mpsca {

using Vector = Eigen::VectorXd;

/// Throws InvalidArgument unless `x` is non-empty and every entry is finite.
void check_point(const Vector& x, const char* what = "point");

/// A scalar function with an analytic gradient.
///
/// When `positive()` is set, every evaluation checks value > 0 and throws
/// DomainViolation otherwise; the bounds in this library are only valid for
/// strictly positive factors.
class SmoothScalarField {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  SmoothScalarField(std::string name, ValueFn value, GradientFn gradient, bool positive);

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  bool positive() const { return positive_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  ValueFn value_;
  GradientFn gradient_;
  bool positive_;
};

namespace fields {

SmoothScalarField zero();
/// c (any sign); positivity flag set iff c > 0.
SmoothScalarField constant(double c);
/// x_i
SmoothScalarField coordinate(int i, bool positive = true);
/// a^T x + b
SmoothScalarField affine(Vector a, double b, bool positive = false);
/// ||x - center||^2
SmoothScalarField squared_distance(Vector center);

}  // namespace fields

enum class Sign : int { Plus = 1, Minus = -1 };

/// sign * prod_k factor_k(x), K >= 2, every factor positive.
class ProductTerm {
 public:
  ProductTerm(std::vector<SmoothScalarField> factors, Sign sign = Sign::Plus);

  int order() const { return static_cast<int>(factors_.size()); }
  Sign sign() const { return sign_; }
  const std::vector<SmoothScalarField>& factors() const { return factors_; }

  /// Unsigned factor values at x.
  Vector factor_values(const Vector& x) const;
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  std::vector<SmoothScalarField> factors_;
  Sign sign_;
};

/// J(x) + sum_n sign_n prod_k f_n^(k)(x).
class CompositeObjective {
 public:
  explicit CompositeObjective(std::optional<SmoothScalarField> convex_part,
                              std::vector<ProductTerm> terms = {});

  const SmoothScalarField& convex_part() const { return convex_part_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  int num_terms() const { return static_cast<int>(terms_.size()); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  SmoothScalarField convex_part_;
  std::vector<ProductTerm> terms_;
};

double evaluate_objective(const CompositeObjective& obj, const Vector& x);
Vector gradient_objective(const CompositeObjective& obj, const Vector& x);

/// One coordinate range. Infinite ends are allowed; open ends are closed
/// inward by a margin when the region is built.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_open = false;
  bool upper_open = false;
};

/// a^T x <= b
struct LinearConstraint {
  Vector a;
  double b = 0.0;
};

/// Box (per-coordinate intervals) intersected with halfspaces.
class FeasibleRegion {
 public:
  static constexpr double kDefaultMargin = 1e-9;

  FeasibleRegion(std::vector<Interval> intervals, std::vector<LinearConstraint> constraints = {},
                 double margin_factor = kDefaultMargin);

  static FeasibleRegion unbounded(int dimension);

  int dimension() const { return static_cast<int>(lower_.size()); }
  /// Closed bounds actually enforced (open ends already shrunk).
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  double max_violation(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-10) const;

 private:
  std::vector<Interval> intervals_;
  std::vector<LinearConstraint> constraints_;
  Vector lower_;
  Vector upper_;
};

enum class Orientation { Positive, Negative };

/// Auxiliary variables of one product term: K-1 entries, all > 0, or a
/// single negative entry for the reversed bound of -A*B.
class AuxBlock {
 public:
  AuxBlock(std::vector<double> values, Orientation orientation = Orientation::Positive);

  const std::vector<double>& values() const { return values_; }
  Orientation orientation() const { return orientation_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> values_;
  Orientation orientation_;
};

}  // namespace mpsca
