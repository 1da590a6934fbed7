#pragma once

#include <cmath>

#include "mpsca/function_core.hpp"

namespace testing {

inline mpsca::Vector vec(std::initializer_list<double> v) {
  mpsca::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) out[i++] = e;
  return out;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline mpsca::SmoothScalarField square_field() {
  return {"x^2", [](const mpsca::Vector& x) { return x[0] * x[0]; },
          [](const mpsca::Vector& x) { return mpsca::Vector::Constant(1, 2.0 * x[0]).eval(); },
          true};
}

inline mpsca::SmoothScalarField scaled_square_field(double c) {
  return {"cx^2", [c](const mpsca::Vector& x) { return c * x[0] * x[0]; },
          [c](const mpsca::Vector& x) { return mpsca::Vector::Constant(1, 2.0 * c * x[0]).eval(); },
          true};
}

inline mpsca::SmoothScalarField exp_field() {
  return {"exp", [](const mpsca::Vector& x) { return std::exp(x[0]); },
          [](const mpsca::Vector& x) { return mpsca::Vector::Constant(1, std::exp(x[0])).eval(); },
          true};
}

}  // namespace testing
