// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vncut/errors.hpp"
#include "vncut/grid.hpp"

namespace vncut {

// Direct-sum trapezoid convolution of two densities sampled with a common
// step. The result lives on the Minkowski sum of the supports. Each factor
// carries its own trapezoid endpoint weight, which keeps the discrete
// operator symmetric in its arguments.
inline GridDensity1D convolve(const GridDensity1D& f, const GridDensity1D& F) {
  if (!same_step(f.grid(), F.grid())) {
    throw validation_error("convolve: grid steps differ; resample one input first");
  }
  Grid1D out_grid = minkowski_sum_grid(f.grid(), F.grid());
  int nf = f.grid().n();
  int nF = F.grid().n();
  int ng = out_grid.n();
  double h = f.grid().step();
  std::vector<double> g(static_cast<std::size_t>(ng), 0.0);
  for (int l = 0; l < ng; ++l) {
    int i_lo = std::max(0, l - nF + 1);
    int i_hi = std::min(nf - 1, l);
    detail::Accumulator acc;
    for (int i = i_lo; i <= i_hi; ++i) {
      acc.add(detail::trapezoid_weight(i, nf) * detail::trapezoid_weight(l - i, nF) *
              f[i] * F[l - i]);
    }
    g[static_cast<std::size_t>(l)] = h * acc.value();
  }
  GridDensity1D out(out_grid, std::move(g));
  if (std::abs(out.mass() - f.mass() * F.mass()) > 1e-10) {
    throw numerical_error(
        "convolve: output mass deviates from the product of input masses; "
        "the grids likely clip the support");
  }
  return out;
}

}  // namespace vncut
