// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Measurement chain with a phase-encoded first apparatus.
//
// The spin kick rotates a coherent excitation of amplitude r from mu0 to
// mu = mu0 - m * chi. The second pointer reads out the cosine of the phase,
// so the readout shift is damped: the mean lands at cos(mu) * S(r) instead
// of the elementary cos(mu). Moving the cut past the first apparatus (or
// treating it semiclassically) gives a different damping, which is the whole
// point of the comparison.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "vncut/errors.hpp"
#include "vncut/grid.hpp"
#include "vncut/hilbert.hpp"
#include "vncut/linear_chain.hpp"
#include "vncut/quadrature.hpp"

namespace vncut {

// Enough theta nodes that the Gauss-Legendre quadrature resolves the readout
// weight, whose oscillation scale shrinks with both truncation and r.
inline int default_theta_nodes(int truncation, double r) {
  int scaled = static_cast<int>(std::ceil(8.0 * std::sqrt(static_cast<double>(truncation)) * r));
  return std::max(512, scaled);
}

struct PhaseChainConfig {
  int m;
  double chi;
  double r;
  double mu0 = 0.5 * std::acos(-1.0);
  int truncation = 0;   // 0 picks default_truncation(r)
  int theta_nodes = 0;  // 0 picks default_theta_nodes

  int resolved_truncation() const {
    return truncation > 0 ? truncation : default_truncation(r);
  }
  int resolved_theta_nodes() const {
    return theta_nodes > 0 ? theta_nodes : default_theta_nodes(resolved_truncation(), r);
  }
};

namespace detail {

inline void validate_phase_label(double m, double chi, double r, double mu0) {
  const double pi = std::acos(-1.0);
  if (!std::isfinite(m)) {
    throw validation_error("phase chain: m must be finite");
  }
  if (!std::isfinite(chi) || !(chi > 0.0) || !(chi < pi)) {
    throw validation_error("phase chain: chi must lie in (0, pi)");
  }
  if (!std::isfinite(r) || r < 0.0) {
    throw validation_error("phase chain: r must be finite and non-negative");
  }
  if (!std::isfinite(mu0)) {
    throw validation_error("phase chain: mu0 must be finite");
  }
}

inline void validate_phase_config(const PhaseChainConfig& cfg) {
  validate_phase_label(cfg.m, cfg.chi, cfg.r, cfg.mu0);
  int n = cfg.resolved_truncation();
  if (n < 1 || n > kTruncationCap) {
    throw validation_error("phase chain: truncation out of range");
  }
  if (cfg.resolved_theta_nodes() < 1) {
    throw validation_error("phase chain: need at least one theta node");
  }
}

}  // namespace detail

// Coherent state after the spin kick for label m.
inline FockVector rotated_state(const PhaseChainConfig& cfg) {
  detail::validate_phase_config(cfg);
  CoherentParams params(cfg.r, derive_mu(cfg.mu0, cfg.m, cfg.chi));
  return coherent_state(params, cfg.resolved_truncation());
}

// Readout weight density over theta: (2/pi) |sum_k sin((k+1) theta) c_k|^2.
// Integrates to the squared norm of the state over (0, pi). The sine factors
// come from the three-term recurrence, so the cost is linear in the
// truncation.
inline double theta_weight(const FockVector& state, double theta) {
  const double pi = std::acos(-1.0);
  if (!(theta > 0.0) || !(theta < pi)) {
    throw validation_error("theta_weight: theta must lie strictly inside (0, pi)");
  }
  double s_prev = 0.0;
  double s_cur = std::sin(theta);
  double c2 = 2.0 * std::cos(theta);
  detail::Accumulator re, im;
  int n = state.truncation();
  for (int k = 0; k < n; ++k) {
    re.add(s_cur * state[k].real());
    im.add(s_cur * state[k].imag());
    double s_next = c2 * s_cur - s_prev;
    s_prev = s_cur;
    s_cur = s_next;
  }
  double a = re.value(), b = im.value();
  return (2.0 / pi) * (a * a + b * b);
}

inline double theta_weight(const PhaseChainConfig& cfg, double theta) {
  return theta_weight(rotated_state(cfg), theta);
}

// Damped mean shift of the quantum readout: cos(mu) * S(r).
inline double mean_shift_quantum(const PhaseChainConfig& cfg) {
  detail::validate_phase_config(cfg);
  return std::cos(derive_mu(cfg.mu0, cfg.m, cfg.chi)) * s_factor(cfg.r);
}

// Undamped shift a dispersion-free classical record would give, with the
// symmetric rest phase mu0 = pi/2: cos(pi/2 - m chi) = sin(m chi).
inline double elementary_classical_shift(double m, double chi) {
  if (!std::isfinite(m) || !std::isfinite(chi)) {
    throw validation_error("elementary_classical_shift: arguments must be finite");
  }
  return std::sin(m * chi);
}

namespace detail {

// Core of the readout distribution for a (possibly half-integral) label m:
// mixture over theta of the second pointer density shifted by cos(theta),
// weighted by the theta readout density.
inline ChainResult phase_q_distribution_for_label(double m, const PhaseChainConfig& cfg,
                                                  const PointerState& Phi) {
  validate_phase_label(m, cfg.chi, cfg.r, cfg.mu0);
  int trunc = cfg.resolved_truncation();
  if (trunc < 1 || trunc > kTruncationCap) {
    throw validation_error("phase chain: truncation out of range");
  }
  int nodes = cfg.resolved_theta_nodes();
  if (nodes < 1) throw validation_error("phase chain: need at least one theta node");

  FockVector state = coherent_state(CoherentParams(cfg.r, derive_mu(cfg.mu0, m, cfg.chi)), trunc);
  Quadrature gl = gauss_legendre(nodes, 0.0, std::acos(-1.0));

  const Grid1D& grid = Phi.grid();
  GridDensity1D F = Phi.density();
  require_shift_fits(grid, F.values(), 1.0);
  require_shift_fits(grid, F.values(), -1.0);
  double h = grid.step();

  std::vector<double> out(static_cast<std::size_t>(grid.n()), 0.0);
  for (int i = 0; i < nodes; ++i) {
    double theta = gl.nodes[static_cast<std::size_t>(i)];
    double coeff = gl.weights[static_cast<std::size_t>(i)] * theta_weight(state, theta);
    if (coeff == 0.0) continue;
    accumulate_shifted_linear(out, F.values(), std::cos(theta) / h, coeff);
  }
  GridDensity1D dist(grid, std::move(out), 1.0, 1e-8);
  double mean = dist.mean();
  return ChainResult{std::move(dist), mean, ChainMethod::quantum};
}

}  // namespace detail

// Readout distribution of the second pointer for a single spin label.
inline ChainResult q_distribution(const PhaseChainConfig& cfg, const PointerState& Phi) {
  return detail::phase_q_distribution_for_label(cfg.m, cfg, Phi);
}

// Convex mixture of per-label readouts for a spin superposition. Labels run
// from m = j down to m = -j and may be half-integral. The coupling must keep
// adjacent outcome phases from overlapping, hence chi < pi / (2 j).
inline ChainResult mixed_q_distribution(const SpinState& spin, const PhaseChainConfig& cfg,
                                        const PointerState& Phi) {
  if (spin.j() > 0.0 && !(cfg.chi < std::acos(-1.0) / (2.0 * spin.j()))) {
    throw validation_error("mixed_q_distribution: chi must stay below pi / (2 j)");
  }
  const Grid1D& grid = Phi.grid();
  std::vector<double> acc(static_cast<std::size_t>(grid.n()), 0.0);
  detail::Accumulator mean_acc;
  for (int idx = 0; idx < spin.dim(); ++idx) {
    double w = spin.probability(idx);
    if (w == 0.0) continue;
    ChainResult part = detail::phase_q_distribution_for_label(spin.m_value(idx), cfg, Phi);
    const std::vector<double>& v = part.distribution.values();
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += w * v[i];
    mean_acc.add(w * part.mean);
  }
  GridDensity1D dist(grid, std::move(acc), 1.0, 1e-8);
  return ChainResult{std::move(dist), mean_acc.value(), ChainMethod::quantum};
}

}  // namespace vncut
