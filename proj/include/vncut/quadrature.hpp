// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vncut/errors.hpp"
#include "vncut/grid.hpp"

namespace vncut {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// three-term Legendre recurrence. Nodes are ascending; the rule is exact for
// polynomials of degree 2n-1.
inline Quadrature gauss_legendre(int n) {
  if (n < 1 || n > 100000) {
    throw validation_error("gauss_legendre: node count out of range [1, 100000]");
  }
  Quadrature q;
  q.nodes.assign(static_cast<std::size_t>(n), 0.0);
  q.weights.assign(static_cast<std::size_t>(n), 0.0);
  const double pi = std::acos(-1.0);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[static_cast<std::size_t>(i)] = -x;
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    q.weights[static_cast<std::size_t>(i)] = w;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return q;
}

inline Quadrature gauss_legendre(int n, double a, double b) {
  if (!(a < b)) {
    throw validation_error("gauss_legendre: interval bounds must satisfy a < b");
  }
  Quadrature q = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes[static_cast<std::size_t>(i)] = mid + half * q.nodes[static_cast<std::size_t>(i)];
    q.weights[static_cast<std::size_t>(i)] *= half;
  }
  return q;
}

// Trapezoid integral of density * integrand over the phase-space rectangle.
// Nodes the caller flags singular are skipped; a non-finite integrand value
// anywhere else is an error.
template <typename F, typename S>
double trapezoid_2d(const PhaseSpaceDensity& density, F&& integrand, S&& is_singular) {
  const Grid1D& gq = density.grid_q();
  const Grid1D& gp = density.grid_p();
  int nq = gq.n(), np = gp.n();
  detail::Accumulator total;
  for (int i = 0; i < nq; ++i) {
    double q = gq.at(i);
    double wq = detail::trapezoid_weight(i, nq);
    detail::Accumulator row;
    for (int k = 0; k < np; ++k) {
      double p = gp.at(k);
      if (is_singular(q, p)) continue;
      double f = integrand(q, p);
      if (!std::isfinite(f)) {
        throw numerical_error("trapezoid_2d: non-finite integrand at an unflagged node");
      }
      row.add(detail::trapezoid_weight(k, np) * density.value(i, k) * f);
    }
    total.add(wq * row.value());
  }
  return total.value() * gq.step() * gp.step();
}

template <typename F>
double trapezoid_2d(const PhaseSpaceDensity& density, F&& integrand) {
  return trapezoid_2d(density, integrand, [](double, double) { return false; });
}

}  // namespace vncut
