// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Semiclassical treatment of the phase readout: the first apparatus is a
// Gaussian blob in phase space, the readout variable is C(q, p) =
// q / sqrt(q^2 + p^2), and everything evolves by Liouville flow. The damped
// mean shift has the closed form sqrt(pi/2) r exp(-r^2) [I0(r^2) + I1(r^2)]
// cos(mu), against which the quadrature route is checked.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vncut/bessel.hpp"
#include "vncut/errors.hpp"
#include "vncut/grid.hpp"
#include "vncut/hilbert.hpp"
#include "vncut/linear_chain.hpp"
#include "vncut/quadrature.hpp"

namespace vncut {

// Readout observable of the phase apparatus in phase-space coordinates.
inline double cos_observable(double q, double p) {
  return q / std::hypot(q, p);
}

// Momentum conjugate to cos_observable under the standard bracket. Singular
// on the p = 0 line.
inline double conjugate_momentum_pc(double q, double p) {
  if (!std::isfinite(q) || !std::isfinite(p)) {
    throw validation_error("conjugate_momentum_pc: arguments must be finite");
  }
  if (p == 0.0) {
    throw validation_error("conjugate_momentum_pc: singular at p = 0");
  }
  double rho2 = q * q + p * p;
  return rho2 * std::sqrt(rho2) / (2.0 * p);
}

// Gaussian phase-space blob matching a coherent excitation of amplitude r
// and phase mu: unit mass, centered at (sqrt(2) r cos mu, sqrt(2) r sin mu),
// isotropic width 1/sqrt(2) in both coordinates.
struct WignerCoherent {
  CoherentParams params;

  explicit WignerCoherent(const CoherentParams& p) : params(p) {}
  WignerCoherent(double r, double mu) : params(r, mu) {}

  double center_q() const { return std::sqrt(2.0) * params.r * std::cos(params.mu); }
  double center_p() const { return std::sqrt(2.0) * params.r * std::sin(params.mu); }

  double density(double q, double p) const {
    double dq = q - center_q();
    double dp = p - center_p();
    return std::exp(-dq * dq - dp * dp) / std::acos(-1.0);
  }
};

// Square grid wide enough for the blob: six widths of margin past the
// displaced center.
inline Grid1D default_phase_grid(double r, int n = 512) {
  double a = 6.0 + std::sqrt(2.0) * r;
  return Grid1D(-a, a, n);
}

inline PhaseSpaceDensity wigner_density(double r, double mu, const Grid1D& grid_q,
                                        const Grid1D& grid_p) {
  WignerCoherent w(r, mu);
  PhaseSpaceDensity d = PhaseSpaceDensity::from_function(
      grid_q, grid_p, [&](double q, double p) { return w.density(q, p); });
  if (std::abs(d.mass() - 1.0) > 1e-9) {
    throw numerical_error("wigner_density: grid clips the blob");
  }
  return d;
}

inline PhaseSpaceDensity wigner_density(double r, double mu) {
  Grid1D g = default_phase_grid(r);
  return wigner_density(r, mu, g, g);
}

// Closed-form semiclassical damping factor:
//   B(r) = sqrt(pi/2) r exp(-r^2) [I0(r^2) + I1(r^2)].
// B(0) = 0, B -> 1 from below as r grows, and B(r) >= S(r) everywhere.
inline double semiclassical_factor(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw validation_error("semiclassical_factor: amplitude must be finite and non-negative");
  }
  if (r == 0.0) return 0.0;
  double r2 = r * r;
  double scaled = bessel_i_scaled(0, r2) + bessel_i_scaled(1, r2);
  return std::sqrt(0.5 * std::acos(-1.0)) * r * scaled;
}

inline double mean_shift_semiclassical_closed(double r, double mu) {
  return std::cos(mu) * semiclassical_factor(r);
}

// The same mean shift by direct phase-space quadrature of C against the
// blob. The origin, where C is undefined, is skipped if a node lands there.
inline double mean_shift_semiclassical_quadrature(const PhaseSpaceDensity& blob) {
  return trapezoid_2d(
      blob, [](double q, double p) { return cos_observable(q, p); },
      [](double q, double p) { return q == 0.0 && p == 0.0; });
}

inline double mean_shift_semiclassical_quadrature(double r, double mu) {
  return mean_shift_semiclassical_quadrature(wigner_density(r, mu));
}

// Readout distribution of the second pointer under the semiclassical first
// stage: the pushforward of the blob through C, deposited mass- and
// mean-exactly onto a fine lattice over [-1, 1], then applied to the pointer
// density as a mixture of shifts.
inline ChainResult semiclassical_q_distribution(const PhaseSpaceDensity& blob,
                                                const PointerState& Phi,
                                                int shift_bins = 4097) {
  if (shift_bins < 3) {
    throw validation_error("semiclassical_q_distribution: need at least 3 shift bins");
  }
  const Grid1D& gq = blob.grid_q();
  const Grid1D& gp = blob.grid_p();
  int nq = gq.n(), np = gp.n();
  double cell = gq.step() * gp.step();

  Grid1D cgrid(-1.0, 1.0, shift_bins);
  double hc = cgrid.step();
  std::vector<double> cmass(static_cast<std::size_t>(shift_bins), 0.0);
  for (int i = 0; i < nq; ++i) {
    double q = gq.at(i);
    double wq = detail::trapezoid_weight(i, nq);
    for (int k = 0; k < np; ++k) {
      double p = gp.at(k);
      if (q == 0.0 && p == 0.0) continue;
      double w = wq * detail::trapezoid_weight(k, np) * cell * blob.value(i, k);
      if (w == 0.0) continue;
      double t = (cos_observable(q, p) + 1.0) / hc;
      int j0 = static_cast<int>(std::floor(t));
      double frac = t - j0;
      if (j0 < 0) { j0 = 0; frac = 0.0; }
      if (j0 >= shift_bins - 1) { j0 = shift_bins - 1; frac = 0.0; }
      cmass[static_cast<std::size_t>(j0)] += (1.0 - frac) * w;
      if (frac > 0.0) cmass[static_cast<std::size_t>(j0 + 1)] += frac * w;
    }
  }

  const Grid1D& grid = Phi.grid();
  GridDensity1D F = Phi.density();
  detail::require_shift_fits(grid, F.values(), 1.0);
  detail::require_shift_fits(grid, F.values(), -1.0);
  double h = grid.step();
  std::vector<double> out(static_cast<std::size_t>(grid.n()), 0.0);
  for (int j = 0; j < shift_bins; ++j) {
    double w = cmass[static_cast<std::size_t>(j)];
    if (w == 0.0) continue;
    detail::accumulate_shifted_linear(out, F.values(), cgrid.at(j) / h, w);
  }
  GridDensity1D dist(grid, std::move(out), 1.0, 1e-7);
  double mean = dist.mean();
  return ChainResult{std::move(dist), mean, ChainMethod::classical_cut};
}

inline ChainResult semiclassical_q_distribution(double r, double mu, const PointerState& Phi) {
  return semiclassical_q_distribution(wigner_density(r, mu), Phi);
}

}  // namespace vncut
