#include "mpsca/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace mpsca {
namespace {

constexpr double kChainTolerance = 1e-12;
constexpr double kTangencyValueTolerance = 1e-10;
constexpr double kTangencyGradientTolerance = 1e-5;
constexpr double kConstantYTolerance = 1e-9;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector to_vector(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

AuxBlock with_entry(const AuxBlock& y, int k, double value) {
  std::vector<double> v = y.values();
  v[static_cast<std::size_t>(k) - 1] = value;
  return AuxBlock(std::move(v));
}

double am_value(const Vector& a, const AuxBlock& y) { return mean_bound(a, y, MeanKind::AM).value; }

struct TangencyErrors {
  double value;
  double gradient;
};

TangencyErrors tangency_errors(const ProductTerm& term, const Vector& x0) {
  const double product = term.value(x0);
  const AuxBlock y = tangent_aux(term, x0);
  const double majorizer = am_product_majorizer(term, x0, y);
  const Vector fd = fd_gradient([&](const Vector& x) { return am_product_majorizer(term, x, y); }, x0);
  const Vector exact = term.gradient(x0);
  const double scale = std::max(exact.norm(), std::numeric_limits<double>::min());
  return {std::abs(majorizer - product) / std::abs(product), (fd - exact).norm() / scale};
}

double normalized_curvature(const Vector& f, const AuxBlock& y, int k, double t) {
  const double h = 1e-4 * t;
  const double mid = am_value(f, with_entry(y, k, t));
  const double d2 = (am_value(f, with_entry(y, k, t + h)) - 2.0 * mid +
                     am_value(f, with_entry(y, k, t - h))) /
                    (h * h);
  return d2 * t * t / mid;
}

double y_deviation(const ProductTerm& term, const Vector& base, const Vector& probe) {
  const AuxBlock y0 = closed_form_y(term.factor_values(base));
  const AuxBlock y1 = closed_form_y(term.factor_values(probe));
  double worst = 0.0;
  for (int k = 0; k < y0.size(); ++k) worst = std::max(worst, std::abs(y1[k] / y0[k] - 1.0));
  return worst;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["worst_slack"] = r.worst_slack;
  j["witness"] = r.witness;
  j["seed"] = r.seed;
  j["flagged"] = r.flagged;
  j["inconclusive"] = r.inconclusive;
  return j;
}

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double rel_h) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_h * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x,
                           double rel_h) {
  const Eigen::Index n = x.size();
  Vector h(n);
  for (Eigen::Index i = 0; i < n; ++i) h[i] = rel_h * std::max(1.0, std::abs(x[i]));
  auto at = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    Vector p = x;
    p[i] += si * h[i];
    p[j] += sj * h[j];
    return f(p);
  };
  Eigen::MatrixXd H(n, n);
  const double center = f(x);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector p = x;
    p[i] = x[i] + h[i];
    const double up = f(p);
    p[i] = x[i] - h[i];
    H(i, i) = (up - 2.0 * center + f(p)) / (h[i] * h[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      H(i, j) = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                (4.0 * h[i] * h[j]);
      H(j, i) = H(i, j);
    }
  }
  return H;
}

double chain_slack(const Vector& a, const AuxBlock& y) {
  const Vector t = transform_factors(a, y);
  const double means[4] = {mean_of(t, MeanKind::HM), mean_of(t, MeanKind::GM),
                           mean_of(t, MeanKind::AM), mean_of(t, MeanKind::QM)};
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double scale = std::max(std::abs(means[i]), std::abs(means[i + 1]));
    worst = std::min(worst, scale == 0.0 ? 0.0 : (means[i + 1] - means[i]) / scale);
  }
  return worst;
}

VerificationReport check_inequality_chain(int K, long samples, std::uint64_t seed) {
  if (K < 2 || K > 8) throw InvalidArgument("inequality chain: K must be in [2, 8]");
  if (samples < 1) throw InvalidArgument("inequality chain: samples must be >= 1");
  VerificationReport r;
  r.name = "inequality-chain-K" + std::to_string(K);
  r.samples = samples;
  r.seed = seed;
  r.worst_slack = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  Vector a(K);
  std::vector<double> y(static_cast<std::size_t>(K) - 1);
  for (long s = 0; s < samples; ++s) {
    for (int k = 0; k < K; ++k) a[k] = rng.log_uniform(1e-2, 1e2);
    for (auto& v : y) v = rng.log_uniform(1e-2, 1e2);
    const double slack = chain_slack(a, AuxBlock(y));
    if (slack < -kChainTolerance) ++r.violations;
    if (slack < r.worst_slack) {
      r.worst_slack = slack;
      r.witness = {{"a", to_std(a)}, {"y", y}};
    }
  }
  return r;
}

double replay_inequality_chain(const nlohmann::json& witness) {
  return chain_slack(to_vector(witness.at("a")),
                     AuxBlock(witness.at("y").get<std::vector<double>>()));
}

VerificationReport check_tangency(const ProductTerm& term, const Vector& x0) {
  check_point(x0, "tangency x0");
  VerificationReport r;
  r.name = "tangency-K" + std::to_string(term.order());
  r.samples = 1;
  const TangencyErrors e = tangency_errors(term, x0);
  if (e.value > kTangencyValueTolerance) ++r.violations;
  if (e.gradient > kTangencyGradientTolerance) ++r.violations;
  r.worst_slack = std::max(e.value, e.gradient);
  r.witness = {{"x0", to_std(x0)}, {"value_error", e.value}, {"gradient_error", e.gradient}};
  return r;
}

double replay_tangency(const ProductTerm& term, const nlohmann::json& witness) {
  const TangencyErrors e = tangency_errors(term, to_vector(witness.at("x0")));
  return std::max(e.value, e.gradient);
}

double hessian_det_m2(const Vector& a, double y1, double y2) {
  if (a.size() != 3) throw InvalidArgument("det M2: needs three factor values");
  const double cross = a[0] - a[1] / (y1 * y1);
  return 12.0 * a[1] * a[2] / (y1 * y1 * y1 * y2 * y2 * y2) - cross * cross;
}

HessianWitness hessian_counterexample_k3() {
  const Vector f = Vector::Ones(3);
  for (int t = 1; t <= 1000; ++t) {
    const double det = hessian_det_m2(f, t, t);
    if (!(det < 0.0)) continue;
    HessianWitness w;
    w.f = f;
    w.y = Vector::Constant(2, t);
    w.det_m2 = det;
    const auto scaled_bound = [&](const Vector& y) {
      return 3.0 * am_value(f, AuxBlock({y[0], y[1]}));
    };
    w.det_fd = fd_hessian(scaled_bound, w.y).determinant();
    if (!(w.det_fd < 0.0))
      throw NumericalFailure("hessian counterexample: finite differences disagree in sign");
    return w;
  }
  throw NumericalFailure("hessian counterexample: no witness on the search grid");
}

VerificationReport check_coordinate_convexity(const Vector& f, const AuxBlock& y, int k,
                                              int points) {
  if (f.size() != y.size() + 1) throw InvalidArgument("coordinate convexity: y must have K-1 entries");
  if (k < 1 || k > y.size()) throw InvalidArgument("coordinate convexity: k out of range");
  if (points < 2) throw InvalidArgument("coordinate convexity: need >= 2 points");
  VerificationReport r;
  r.name = "coordinate-convexity-k" + std::to_string(k);
  r.samples = points;
  r.worst_slack = std::numeric_limits<double>::infinity();
  const double center = y[k - 1];
  for (int j = 0; j < points; ++j) {
    const double t = center * std::pow(4.0, 2.0 * j / (points - 1) - 1.0);
    const double c = normalized_curvature(f, y, k, t);
    if (!(c > 0.0)) ++r.violations;
    if (c < r.worst_slack) {
      r.worst_slack = c;
      r.witness = {{"f", to_std(f)}, {"y", y.values()}, {"k", k}, {"t", t}};
    }
  }
  return r;
}

double replay_coordinate_convexity(const nlohmann::json& witness) {
  return normalized_curvature(to_vector(witness.at("f")),
                              AuxBlock(witness.at("y").get<std::vector<double>>()),
                              witness.at("k").get<int>(), witness.at("t").get<double>());
}

double am_partial(const Vector& a, const AuxBlock& y, int k) {
  const Vector t = transform_factors(a, y);
  const auto K = static_cast<double>(a.size());
  return (t.head(k).sum() - k * t[k]) / (K * y[k - 1]);
}

CoordinateDescentResult coordinate_descent_y(const Vector& a, const AuxBlock& y0, double tol,
                                             int max_cycles) {
  if (!(tol > 0.0)) throw InvalidArgument("coordinate descent: tol must be > 0");
  CoordinateDescentResult result{y0, 0, {am_value(a, y0)}};
  AuxBlock y = y0;
  const int dims = y.size();
  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    for (int k = 1; k <= dims; ++k) {
      // sign of the partial derivative is increasing in y_k
      auto slope = [&](double t) { return am_partial(a, with_entry(y, k, t), k); };
      double lo = y[k - 1], hi = y[k - 1];
      while (slope(lo) > 0.0) lo *= 0.5;
      while (slope(hi) < 0.0) hi *= 2.0;
      for (int it = 0; it < 200 && hi / lo - 1.0 > 4e-16; ++it) {
        const double mid = std::sqrt(lo * hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
      }
      AuxBlock candidate = with_entry(y, k, std::sqrt(lo * hi));
      if (am_value(a, candidate) <= am_value(a, y)) y = std::move(candidate);
    }
    const double previous = result.values.back();
    const double current = am_value(a, y);
    result.values.push_back(current);
    result.cycles = cycle;
    if (previous - current < tol * std::abs(previous)) {
      result.y = y;
      return result;
    }
  }
  throw NumericalFailure("coordinate descent: cycle cap reached");
}

VerificationReport detect_constant_y(const ProductTerm& term, const std::vector<Vector>& xs) {
  VerificationReport r;
  r.name = "constant-y";
  r.samples = static_cast<long>(xs.size());
  if (xs.size() < 2) {
    r.inconclusive = true;
    if (!xs.empty()) r.witness = {{"base", to_std(xs[0])}, {"probe", to_std(xs[0])}};
    return r;
  }
  for (std::size_t p = 1; p < xs.size(); ++p) {
    const double dev = y_deviation(term, xs[0], xs[p]);
    if (dev > kConstantYTolerance) ++r.violations;
    if (p == 1 || dev > r.worst_slack) {
      r.worst_slack = dev;
      r.witness = {{"base", to_std(xs[0])}, {"probe", to_std(xs[p])}};
    }
  }
  r.flagged = r.violations == 0;
  return r;
}

double replay_constant_y(const ProductTerm& term, const nlohmann::json& witness) {
  return y_deviation(term, to_vector(witness.at("base")), to_vector(witness.at("probe")));
}

SmoothScalarField random_poly_exp_field(int dimension, Rng& rng) {
  const double c = rng.log_uniform(0.5, 2.0);
  Vector v(dimension), m(dimension);
  for (int i = 0; i < dimension; ++i) {
    v[i] = rng.uniform(-0.5, 0.5);
    m[i] = rng.uniform(-1.0, 1.0);
  }
  return {"polyexp",
          [c, v, m](const Vector& x) { return c * std::exp(v.dot(x)) * (1.0 + (x - m).squaredNorm()); },
          [c, v, m](const Vector& x) {
            const double e = c * std::exp(v.dot(x));
            return (e * ((1.0 + (x - m).squaredNorm()) * v + 2.0 * (x - m))).eval();
          },
          true};
}

}  // namespace mpsca
