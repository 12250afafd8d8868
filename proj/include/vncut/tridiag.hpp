// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetric tridiagonal eigensolver, implicit-shift QL with optional
// eigenvector accumulation. Classic dense formulation; matrices here stay
// small (a few hundred rows).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "vncut/errors.hpp"

namespace vncut {

struct TridiagEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major: vectors[k * n + i] is component i of eigenvector k
};

namespace detail {

inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>* z, int n) {
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[static_cast<std::size_t>(m)]) +
                    std::abs(d[static_cast<std::size_t>(m + 1)]);
        if (std::abs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) {
          throw numerical_error("tridiag_eigen: QL iteration did not converge");
        }
        double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool underflow = false;
        for (; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          double b = c * e[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<std::size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i + 1)] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i + 1)] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i + 1)] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (int k = 0; k < n; ++k) {
              std::size_t a0 = static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i);
              f = (*z)[a0 + 1];
              (*z)[a0 + 1] = s * (*z)[a0] + c * f;
              (*z)[a0] = c * (*z)[a0] - s * f;
            }
          }
        }
        if (underflow && i >= l) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
}

inline void tridiag_check_input(const std::vector<double>& diag,
                                const std::vector<double>& off) {
  if (diag.empty()) throw validation_error("tridiag_eigen: empty diagonal");
  if (off.size() + 1 != diag.size()) {
    throw validation_error("tridiag_eigen: off-diagonal size must be n - 1");
  }
  for (double x : diag) {
    if (!std::isfinite(x)) throw validation_error("tridiag_eigen: non-finite entry");
  }
  for (double x : off) {
    if (!std::isfinite(x)) throw validation_error("tridiag_eigen: non-finite entry");
  }
}

}  // namespace detail

inline std::vector<double> tridiag_eigenvalues(std::vector<double> diag,
                                               std::vector<double> off) {
  detail::tridiag_check_input(diag, off);
  int n = static_cast<int>(diag.size());
  off.resize(static_cast<std::size_t>(n), 0.0);
  detail::tridiag_ql(diag, off, nullptr, n);
  std::sort(diag.begin(), diag.end());
  return diag;
}

inline TridiagEigen tridiag_eigen(std::vector<double> diag, std::vector<double> off) {
  detail::tridiag_check_input(diag, off);
  int n = static_cast<int>(diag.size());
  off.resize(static_cast<std::size_t>(n), 0.0);
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;
  detail::tridiag_ql(diag, off, &z, n);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return diag[static_cast<std::size_t>(a)] < diag[static_cast<std::size_t>(b)]; });

  TridiagEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int j = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = diag[static_cast<std::size_t>(j)];
    // Deterministic sign: largest-magnitude component is positive.
    int imax = 0;
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = z[static_cast<std::size_t>(i) * n + j];
      if (std::abs(v) > vmax) {
        vmax = std::abs(v);
        imax = i;
      }
    }
    double sgn = (z[static_cast<std::size_t>(imax) * n + j] < 0.0) ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) {
      out.vectors[static_cast<std::size_t>(k) * n + i] =
          sgn * z[static_cast<std::size_t>(i) * n + j];
    }
  }
  return out;
}

}  // namespace vncut
