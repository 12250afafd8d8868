// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "vncut/errors.hpp"

namespace vncut {
namespace detail {

// Ascending series sum_k (z/2)^{2k+n} / (k! (k+n)!). Used up to z = 30, where
// the sum stays below 1e12 and every term is exact to machine precision.
inline double bessel_i_series(int order, double z) {
  double half = 0.5 * z;
  double term = (order == 0) ? 1.0 : half;
  double sum = term;
  double half2 = half * half;
  for (int k = 1; k <= 400; ++k) {
    term *= half2 / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term <= 1e-17 * sum) return sum;
  }
  throw numerical_error("bessel_i: series did not converge");
}

// Asymptotic expansion for e^{-z} I_n(z), truncated at the smallest term.
// For z >= 30 the truncation floor is far below double precision.
inline double bessel_i_asymptotic_scaled(int order, double z) {
  double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = term;
  for (int k = 1; k <= 40; ++k) {
    double factor = -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * z * k);
    double next = term * factor;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::acos(-1.0) * z);
}

inline void bessel_validate(int order, double z) {
  if (order != 0 && order != 1) {
    throw validation_error("bessel_i: order must be 0 or 1");
  }
  if (!std::isfinite(z) || z < 0.0) {
    throw validation_error("bessel_i: argument must be finite and non-negative");
  }
}

inline constexpr double kBesselSeriesLimit = 30.0;

}  // namespace detail

// e^{-z} I_order(z), the exponentially scaled modified Bessel function.
// Well-behaved for all non-negative z; the unscaled value overflows a double
// near z = 709.
inline double bessel_i_scaled(int order, double z) {
  detail::bessel_validate(order, z);
  if (z <= detail::kBesselSeriesLimit) {
    return detail::bessel_i_series(order, z) * std::exp(-z);
  }
  return detail::bessel_i_asymptotic_scaled(order, z);
}

// I_order(z) for order 0 or 1.
inline double bessel_i(int order, double z) {
  detail::bessel_validate(order, z);
  if (z <= detail::kBesselSeriesLimit) {
    return detail::bessel_i_series(order, z);
  }
  return detail::bessel_i_asymptotic_scaled(order, z) * std::exp(z);
}

}  // namespace vncut
