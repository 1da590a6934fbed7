#include "mpsca/function_core.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace mpsca {

void check_point(const Vector& x, const char* what) {
  if (x.size() == 0) throw InvalidArgument(std::string(what) + ": empty");
  if (!x.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

SmoothScalarField::SmoothScalarField(std::string name, ValueFn value, GradientFn gradient,
                                     bool positive)
    : name_(std::move(name)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      positive_(positive) {
  if (!value_ || !gradient_) throw InvalidArgument("field '" + name_ + "': missing callback");
}

double SmoothScalarField::value(const Vector& x) const {
  const double v = value_(x);
  if (!std::isfinite(v)) throw DomainViolation("field '" + name_ + "': non-finite value");
  if (positive_ && !(v > 0.0)) {
    std::ostringstream os;
    os << "field '" << name_ << "': non-positive value " << v;
    throw DomainViolation(os.str());
  }
  return v;
}

Vector SmoothScalarField::gradient(const Vector& x) const {
  Vector g = gradient_(x);
  if (g.size() != x.size())
    throw InvalidArgument("field '" + name_ + "': gradient dimension mismatch");
  return g;
}

namespace fields {

SmoothScalarField zero() {
  return {"0", [](const Vector&) { return 0.0; },
          [](const Vector& x) { return Vector::Zero(x.size()).eval(); }, false};
}

SmoothScalarField constant(double c) {
  return {"const", [c](const Vector&) { return c; },
          [](const Vector& x) { return Vector::Zero(x.size()).eval(); }, c > 0.0};
}

SmoothScalarField coordinate(int i, bool positive) {
  return {"x" + std::to_string(i), [i](const Vector& x) { return x[i]; },
          [i](const Vector& x) {
            Vector g = Vector::Zero(x.size());
            g[i] = 1.0;
            return g;
          },
          positive};
}

SmoothScalarField affine(Vector a, double b, bool positive) {
  return {"affine", [a, b](const Vector& x) { return a.dot(x) + b; },
          [a](const Vector&) { return a; }, positive};
}

SmoothScalarField squared_distance(Vector center) {
  return {"sqdist", [c = center](const Vector& x) { return (x - c).squaredNorm(); },
          [c = std::move(center)](const Vector& x) { return (2.0 * (x - c)).eval(); }, false};
}

}  // namespace fields

ProductTerm::ProductTerm(std::vector<SmoothScalarField> factors, Sign sign)
    : factors_(std::move(factors)), sign_(sign) {
  if (factors_.size() < 2) throw InvalidArgument("product term needs K >= 2 factors");
  for (const auto& f : factors_) {
    if (!f.positive())
      throw InvalidArgument("product term factor '" + f.name() + "' lacks positivity flag");
  }
}

Vector ProductTerm::factor_values(const Vector& x) const {
  Vector v(order());
  for (int k = 0; k < order(); ++k) v[k] = factors_[static_cast<std::size_t>(k)].value(x);
  return v;
}

double ProductTerm::value(const Vector& x) const {
  return static_cast<int>(sign_) * factor_values(x).prod();
}

Vector ProductTerm::gradient(const Vector& x) const {
  const Vector f = factor_values(x);
  Vector g = Vector::Zero(x.size());
  // prod_{j != k} f_j without dividing, factors may be tiny
  for (int k = 0; k < order(); ++k) {
    double others = 1.0;
    for (int j = 0; j < order(); ++j)
      if (j != k) others *= f[j];
    g += others * factors_[static_cast<std::size_t>(k)].gradient(x);
  }
  return static_cast<int>(sign_) * g;
}

CompositeObjective::CompositeObjective(std::optional<SmoothScalarField> convex_part,
                                       std::vector<ProductTerm> terms)
    : convex_part_(convex_part ? std::move(*convex_part) : fields::zero()),
      terms_(std::move(terms)) {}

double CompositeObjective::value(const Vector& x) const {
  double v = convex_part_.value(x);
  for (const auto& t : terms_) v += t.value(x);
  return v;
}

Vector CompositeObjective::gradient(const Vector& x) const {
  Vector g = convex_part_.gradient(x);
  for (const auto& t : terms_) g += t.gradient(x);
  return g;
}

double evaluate_objective(const CompositeObjective& obj, const Vector& x) {
  check_point(x);
  return obj.value(x);
}

Vector gradient_objective(const CompositeObjective& obj, const Vector& x) {
  check_point(x);
  return obj.gradient(x);
}

FeasibleRegion::FeasibleRegion(std::vector<Interval> intervals,
                               std::vector<LinearConstraint> constraints, double margin_factor)
    : intervals_(std::move(intervals)), constraints_(std::move(constraints)) {
  const auto m = static_cast<Eigen::Index>(intervals_.size());
  if (m == 0) throw InvalidArgument("region: dimension must be >= 1");
  if (!(margin_factor >= 0.0)) throw InvalidArgument("region: negative margin");
  lower_.resize(m);
  upper_.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Interval& iv = intervals_[static_cast<std::size_t>(i)];
    if (std::isnan(iv.lower) || std::isnan(iv.upper) || iv.lower > iv.upper)
      throw InvalidArgument("region: bad interval at coordinate " + std::to_string(i));
    const bool finite_width = std::isfinite(iv.lower) && std::isfinite(iv.upper);
    const double width = finite_width ? iv.upper - iv.lower : 0.0;
    auto margin_at = [&](double end) {
      return margin_factor * (finite_width ? width : std::max(1.0, std::abs(end)));
    };
    lower_[i] = iv.lower_open && std::isfinite(iv.lower) ? iv.lower + margin_at(iv.lower) : iv.lower;
    upper_[i] = iv.upper_open && std::isfinite(iv.upper) ? iv.upper - margin_at(iv.upper) : iv.upper;
    if (lower_[i] > upper_[i])
      throw InvalidArgument("region: empty interval at coordinate " + std::to_string(i));
  }
  for (const auto& c : constraints_) {
    if (c.a.size() != m) throw InvalidArgument("region: constraint dimension mismatch");
    if (!c.a.allFinite() || !std::isfinite(c.b))
      throw InvalidArgument("region: non-finite constraint");
  }
}

FeasibleRegion FeasibleRegion::unbounded(int dimension) {
  return FeasibleRegion(std::vector<Interval>(static_cast<std::size_t>(dimension)));
}

double FeasibleRegion::max_violation(const Vector& x) const {
  if (x.size() != dimension()) throw InvalidArgument("region: point dimension mismatch");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    worst = std::max(worst, lower_[i] - x[i]);
    worst = std::max(worst, x[i] - upper_[i]);
  }
  for (const auto& c : constraints_) worst = std::max(worst, c.a.dot(x) - c.b);
  return worst;
}

bool FeasibleRegion::contains(const Vector& x, double tol) const {
  return x.allFinite() && max_violation(x) <= tol;
}

AuxBlock::AuxBlock(std::vector<double> values, Orientation orientation)
    : values_(std::move(values)), orientation_(orientation) {
  if (values_.empty()) throw InvalidArgument("aux block: empty");
  if (orientation_ == Orientation::Negative) {
    if (values_.size() != 1) throw InvalidArgument("aux block: negative orientation needs K = 2");
    if (!(values_[0] < 0.0) || !std::isfinite(values_[0]))
      throw InvalidArgument("aux block: negative orientation requires y < 0");
    return;
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument("aux block: positive orientation requires finite y > 0");
  }
}

}  // namespace mpsca
