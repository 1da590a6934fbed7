#pragma once

#include "mpsca/function_core.hpp"

namespace mpsca {

enum class MeanKind { HM, GM, AM, QM };

const char* to_string(MeanKind kind);

struct BoundEvaluation {
  MeanKind kind;
  double value;
  Vector transformed;  ///< the K scaled factors the mean was taken over
};

/// Multipliers c with transformed_k = a_k * c_k:
///   c_1 = prod_{i=1}^{K-1} y_i
///   c_k = prod_{i=k}^{K-1} y_i / y_{k-1}^{k-1}     (2 <= k <= K-1)
///   c_K = 1 / y_{K-1}^{K-1}
/// prod_k c_k = 1 for every positive y.
Vector transform_coefficients(const AuxBlock& y);

/// a_k * c_k(y). Requires a.size() == y.size() + 1 >= 2 and positive entries.
Vector transform_factors(const Vector& a, const AuxBlock& y);

/// Plain HM/GM/AM/QM of positive values.
double mean_of(const Vector& values, MeanKind kind);

/// Mean of transform_factors(a, y). The GM equals (prod a)^(1/K) for every
/// y; HM <= GM <= AM <= QM.
BoundEvaluation mean_bound(const Vector& a, const AuxBlock& y, MeanKind kind);

/// Equalizing auxiliaries by forward recurrence:
///   y_1 = sqrt(a_2/a_1),  y_{k-1} = (y_{k-2}^{k-2} a_k / a_{k-1})^{1/k}.
AuxBlock recurrence_y(const Vector& a);

/// Same equalizer in closed form: each y_{k-1} is expanded directly in
/// y_1 and the consecutive ratios a_{i+1}/a_i, without the recurrence.
AuxBlock closed_form_y(const Vector& a);

/// (f_1^K, ..., f_K^K)
Vector kth_powers(const Vector& factor_values);

/// Auxiliary block at which the AM majorizer of `term` touches the product
/// at x: closed_form_y applied to the K-th powers of the factor values.
AuxBlock tangent_aux(const ProductTerm& term, const Vector& x);

/// (1/K) sum_k c_k(y) f_k(x)^K >= prod_k f_k(x). Requires sign +1.
double am_product_majorizer(const ProductTerm& term, const Vector& x, const AuxBlock& y);
/// x-gradient at fixed y: sum_k c_k f_k^{K-1} grad f_k.
Vector am_product_majorizer_gradient(const ProductTerm& term, const Vector& x, const AuxBlock& y);

/// y A^2 + 1/(4 y B^2) >= A/B; equality at y = 1/(2AB).
double ratio_majorizer_k2(double A, double B, double y);
double ratio_tangent_y(double A, double B);

/// A^2 y + B^2/(4y) >= AB; equality at y = B/(2A).
double product_majorizer_k2(double A, double B, double y);
double product_tangent_y(double A, double B);

/// (A^2 y + B^2/y)/2 <= -AB for y < 0; equality at y = -B/A.
double reversed_bound_negative_product(double A, double B, double y_negative);
double reversed_tangent_y(double A, double B);

}  // namespace mpsca
