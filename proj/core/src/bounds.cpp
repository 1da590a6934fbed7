#include "mpsca/bounds.hpp"

#include <cmath>
#include <string>

namespace mpsca {
namespace {

void require_positive(const Vector& a, const char* what) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i]))
      throw InvalidArgument(std::string(what) + ": entries must be finite and > 0");
  }
}

void require_matching(const Vector& a, const AuxBlock& y) {
  if (a.size() < 2) throw InvalidArgument("bound: need K >= 2 factors");
  if (y.orientation() != Orientation::Positive)
    throw InvalidArgument("bound: mean bounds need positively oriented y");
  if (a.size() != y.size() + 1) throw InvalidArgument("bound: y must have K-1 entries");
  require_positive(a, "bound factors");
}

void require_positive_scalars(double A, double B, const char* what) {
  if (!(A > 0.0) || !(B > 0.0) || !std::isfinite(A) || !std::isfinite(B))
    throw InvalidArgument(std::string(what) + ": A and B must be finite and > 0");
}

}  // namespace

const char* to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::HM: return "HM";
    case MeanKind::GM: return "GM";
    case MeanKind::AM: return "AM";
    case MeanKind::QM: return "QM";
  }
  return "?";
}

Vector transform_coefficients(const AuxBlock& y) {
  if (y.orientation() != Orientation::Positive)
    throw InvalidArgument("transform: needs positively oriented y");
  const int K = y.size() + 1;
  // suffix[k] = prod_{i=k}^{K-1} y_i, 1-based; suffix[K] = 1
  std::vector<double> suffix(static_cast<std::size_t>(K) + 1, 1.0);
  for (int k = K - 1; k >= 1; --k) suffix[k] = suffix[k + 1] * y[k - 1];

  Vector c(K);
  c[0] = suffix[1];
  for (int k = 2; k <= K; ++k) c[k - 1] = suffix[k] / std::pow(y[k - 2], k - 1);
  return c;
}

Vector transform_factors(const Vector& a, const AuxBlock& y) {
  require_matching(a, y);
  return a.cwiseProduct(transform_coefficients(y));
}

double mean_of(const Vector& v, MeanKind kind) {
  const auto K = static_cast<double>(v.size());
  switch (kind) {
    case MeanKind::HM: return K / v.cwiseInverse().sum();
    case MeanKind::GM: return std::exp(v.array().log().sum() / K);
    case MeanKind::AM: return v.sum() / K;
    case MeanKind::QM: return std::sqrt(v.squaredNorm() / K);
  }
  throw InvalidArgument("mean: unknown kind");
}

BoundEvaluation mean_bound(const Vector& a, const AuxBlock& y, MeanKind kind) {
  Vector t = transform_factors(a, y);
  const double value = mean_of(t, kind);
  return {kind, value, std::move(t)};
}

AuxBlock recurrence_y(const Vector& a) {
  if (a.size() < 2) throw InvalidArgument("recurrence_y: need K >= 2");
  require_positive(a, "recurrence_y");
  const auto K = static_cast<int>(a.size());
  std::vector<double> y(static_cast<std::size_t>(K) - 1);
  y[0] = std::sqrt(a[1] / a[0]);
  for (int k = 3; k <= K; ++k) {
    // y_{k-1} from y_{k-2}; a is 0-based
    y[k - 2] = std::pow(std::pow(y[k - 3], k - 2) * a[k - 1] / a[k - 2], 1.0 / k);
  }
  return AuxBlock(std::move(y));
}

AuxBlock closed_form_y(const Vector& a) {
  if (a.size() < 2) throw InvalidArgument("closed_form_y: need K >= 2");
  require_positive(a, "closed_form_y");
  const auto K = static_cast<int>(a.size());
  auto ratio = [&](int i) { return a[i] / a[i - 1]; };  // a_{i+1}/a_i in 1-based terms
  std::vector<double> y(static_cast<std::size_t>(K) - 1);
  y[0] = std::sqrt(ratio(1));
  if (K >= 3) y[1] = std::cbrt(y[0]) * std::cbrt(ratio(2));
  const double log_y1 = std::log(y[0]);
  for (int k = 4; k <= K; ++k) {
    double e1 = 1.0;
    for (int i = 1; i <= k - 2; ++i) e1 *= static_cast<double>(i) / (i + 2);
    double log_y = e1 * log_y1;
    for (int i = 2; i <= k - 2; ++i) {
      double e = 1.0 / (i + 1);
      for (int j = i + 2; j <= k; ++j) e *= static_cast<double>(j - 2) / j;
      log_y += e * std::log(ratio(i));
    }
    log_y += std::log(ratio(k - 1)) / k;
    y[k - 2] = std::exp(log_y);
  }
  return AuxBlock(std::move(y));
}

Vector kth_powers(const Vector& f) {
  const auto K = static_cast<double>(f.size());
  return f.array().pow(K).matrix();
}

AuxBlock tangent_aux(const ProductTerm& term, const Vector& x) {
  return closed_form_y(kth_powers(term.factor_values(x)));
}

double am_product_majorizer(const ProductTerm& term, const Vector& x, const AuxBlock& y) {
  if (term.sign() != Sign::Plus) throw InvalidArgument("AM majorizer: term sign must be +1");
  const Vector a = kth_powers(term.factor_values(x));
  return mean_bound(a, y, MeanKind::AM).value;
}

Vector am_product_majorizer_gradient(const ProductTerm& term, const Vector& x,
                                     const AuxBlock& y) {
  if (term.sign() != Sign::Plus) throw InvalidArgument("AM majorizer: term sign must be +1");
  const Vector f = term.factor_values(x);
  if (f.size() != y.size() + 1) throw InvalidArgument("AM majorizer: y must have K-1 entries");
  const Vector c = transform_coefficients(y);
  const int K = term.order();
  Vector g = Vector::Zero(x.size());
  for (int k = 0; k < K; ++k)
    g += c[k] * std::pow(f[k], K - 1) * term.factors()[static_cast<std::size_t>(k)].gradient(x);
  return g;
}

double ratio_majorizer_k2(double A, double B, double y) {
  require_positive_scalars(A, B, "ratio majorizer");
  if (!(y > 0.0)) throw InvalidArgument("ratio majorizer: y must be > 0");
  return y * A * A + 1.0 / (4.0 * y * B * B);
}

double ratio_tangent_y(double A, double B) {
  require_positive_scalars(A, B, "ratio tangent");
  return 1.0 / (2.0 * A * B);
}

double product_majorizer_k2(double A, double B, double y) {
  require_positive_scalars(A, B, "product majorizer");
  if (!(y > 0.0)) throw InvalidArgument("product majorizer: y must be > 0");
  return A * A * y + B * B / (4.0 * y);
}

double product_tangent_y(double A, double B) {
  require_positive_scalars(A, B, "product tangent");
  return B / (2.0 * A);
}

double reversed_bound_negative_product(double A, double B, double y_negative) {
  require_positive_scalars(A, B, "reversed bound");
  if (!(y_negative < 0.0)) throw InvalidArgument("reversed bound: y must be < 0");
  return 0.5 * (A * A * y_negative + B * B / y_negative);
}

double reversed_tangent_y(double A, double B) {
  require_positive_scalars(A, B, "reversed tangent");
  return -B / A;
}

}  // namespace mpsca
