// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Truncated number-basis state vectors and the cosine phase operator.
//
// The phase-readout apparatus is modelled on a finite ladder of N number
// states. The cosine operator C is tridiagonal with matrix element 1/2 on
// both off-diagonals: sandwiching C between its own eigenvectors (the sine
// profiles below) and integrating the cosine-weighted sine products over
// (0, pi) leaves exactly the nearest-neighbour 1/2 coupling.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "vncut/accumulate.hpp"
#include "vncut/errors.hpp"
#include "vncut/tridiag.hpp"

namespace vncut {

namespace detail {

inline double reduce_mod_2pi(double x) {
  const double two_pi = 2.0 * std::acos(-1.0);
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

}  // namespace detail

// Hard cap on truncation sizes, to catch runaway configuration values.
inline constexpr int kTruncationCap = 4096;

// Amplitude pair (r, mu) of a coherent excitation: mean photon number r^2,
// phase mu stored reduced to [0, 2*pi).
struct CoherentParams {
  double r;
  double mu;

  CoherentParams(double r_in, double mu_in) : r(r_in), mu(detail::reduce_mod_2pi(mu_in)) {
    if (!std::isfinite(r_in) || r_in < 0.0) {
      throw validation_error("CoherentParams: amplitude must be finite and non-negative");
    }
    if (!std::isfinite(mu_in)) {
      throw validation_error("CoherentParams: phase must be finite");
    }
  }
};

// Complex amplitudes on the number basis |0>, ..., |N-1>. Plain container
// with a compensated norm; sub-normalization is enforced by the operations
// that produce physical states, not here (the delta-normalized sine profiles
// from cos_eigenvector legitimately exceed unit norm).
class FockVector {
 public:
  explicit FockVector(std::vector<std::complex<double>> amplitudes)
      : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw validation_error("FockVector: need at least one amplitude");
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw validation_error("FockVector: non-finite amplitude");
      }
    }
  }

  int truncation() const { return static_cast<int>(amps_.size()); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> operator[](int k) const { return amps_[static_cast<std::size_t>(k)]; }

  double norm2() const {
    detail::Accumulator acc;
    for (const auto& a : amps_) acc.add(std::norm(a));
    return acc.value();
  }

 private:
  std::vector<std::complex<double>> amps_;
};

// Truncation heuristic: enough levels that a coherent state of amplitude r
// has norm deficit far below 1e-12.
inline int default_truncation(double r) {
  return static_cast<int>(std::ceil(r * r + 12.0 * std::sqrt(r * r + 1.0) + 30.0));
}

// Coherent state truncated to n levels, built in log space so large r cannot
// overflow the factorials: |c_k| = exp(-r^2/2 + k log r - lgamma(k+1)/2),
// arg c_k = k mu.
inline FockVector coherent_state(const CoherentParams& params, int n,
                                 int cap = kTruncationCap) {
  if (n < 1) throw validation_error("coherent_state: truncation must be at least 1");
  if (n > cap) {
    throw validation_error("coherent_state: truncation " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
  }
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n), {0.0, 0.0});
  if (params.r == 0.0) {
    c[0] = {1.0, 0.0};
  } else {
    double logr = std::log(params.r);
    double r2 = params.r * params.r;
    for (int k = 0; k < n; ++k) {
      double logmag = -0.5 * r2 + k * logr - 0.5 * std::lgamma(static_cast<double>(k) + 1.0);
      double mag = std::exp(logmag);
      double phase = k * params.mu;
      c[static_cast<std::size_t>(k)] = {mag * std::cos(phase), mag * std::sin(phase)};
    }
  }
  FockVector v(std::move(c));
  if (v.norm2() > 1.0 + 1e-12) {
    throw numerical_error("coherent_state: norm exceeds one");
  }
  return v;
}

// Phase label after the spin kick: mu = mu0 - m * chi, reduced to [0, 2*pi).
// m is integral for integer spin chains; mixtures over half-integer spin
// pass half-integral labels through the same formula.
inline double derive_mu(double mu0, double m, double chi) {
  if (!std::isfinite(mu0) || !std::isfinite(m) || !std::isfinite(chi)) {
    throw validation_error("derive_mu: arguments must be finite");
  }
  return detail::reduce_mod_2pi(mu0 - m * chi);
}

// Cosine phase operator on n levels: zero diagonal, 1/2 on the first
// off-diagonals.
class CosOperator {
 public:
  explicit CosOperator(int n) : n_(n) {
    if (n < 1) throw validation_error("CosOperator: dimension must be at least 1");
    if (n > kTruncationCap) throw validation_error("CosOperator: dimension exceeds cap");
  }

  int dimension() const { return n_; }

  double element(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
      throw validation_error("CosOperator: index out of range");
    }
    int d = i - j;
    return (d == 1 || d == -1) ? 0.5 : 0.0;
  }

  std::vector<double> eigenvalues() const {
    return tridiag_eigenvalues(std::vector<double>(static_cast<std::size_t>(n_), 0.0),
                               std::vector<double>(static_cast<std::size_t>(n_ - 1), 0.5));
  }

  TridiagEigen eigensystem() const {
    return tridiag_eigen(std::vector<double>(static_cast<std::size_t>(n_), 0.0),
                         std::vector<double>(static_cast<std::size_t>(n_ - 1), 0.5));
  }

  FockVector apply(const FockVector& v) const {
    if (v.truncation() != n_) {
      throw validation_error("CosOperator: dimension mismatch");
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n_), {0.0, 0.0});
    for (int k = 0; k < n_; ++k) {
      std::complex<double> acc = {0.0, 0.0};
      if (k > 0) acc += 0.5 * v[k - 1];
      if (k + 1 < n_) acc += 0.5 * v[k + 1];
      out[static_cast<std::size_t>(k)] = acc;
    }
    return FockVector(std::move(out));
  }

 private:
  int n_;
};

inline CosOperator cos_operator(int n) { return CosOperator(n); }

// Eigenvector of the cosine operator with eigenvalue cos(theta), as the sine
// profile c_k = sqrt(2/pi) sin((k+1) theta). This is the delta-normalized
// continuum convention, so the vector is not unit norm.
inline FockVector cos_eigenvector(double theta, int n) {
  const double pi = std::acos(-1.0);
  if (!(theta > 0.0) || !(theta < pi)) {
    throw validation_error("cos_eigenvector: theta must lie strictly inside (0, pi)");
  }
  if (n < 1) throw validation_error("cos_eigenvector: dimension must be at least 1");
  double scale = std::sqrt(2.0 / pi);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    c[static_cast<std::size_t>(k)] = {scale * std::sin((k + 1) * theta), 0.0};
  }
  return FockVector(std::move(c));
}

// Quantum damping factor of the phase readout:
//   S(r) = exp(-r^2) sum_n r^{2n+1} / sqrt(n! (n+1)!).
// Evaluated in log space; terms peak near n = r^2. S(0) = 0 and S -> 1 as
// r grows.
inline double s_factor(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw validation_error("s_factor: amplitude must be finite and non-negative");
  }
  if (r == 0.0) return 0.0;
  double logr = std::log(r);
  double r2 = r * r;
  detail::Accumulator sum;
  int guard = static_cast<int>(4.0 * r2) + 200;
  for (int n = 0; n <= guard; ++n) {
    double logt = -r2 + (2.0 * n + 1.0) * logr -
                  0.5 * (std::lgamma(static_cast<double>(n) + 1.0) +
                         std::lgamma(static_cast<double>(n) + 2.0));
    double t = std::exp(logt);
    sum.add(t);
    if (n > r2 && t < 1e-15 * sum.value()) return sum.value();
  }
  throw numerical_error("s_factor: series did not converge");
}

// <C> on a number-basis state: the tridiagonal form collapses the double sum
// to sum_n Re(conj(c_n) c_{n+1}).
inline double expectation_C(const FockVector& v) {
  detail::Accumulator acc;
  int n = v.truncation();
  for (int k = 0; k + 1 < n; ++k) {
    std::complex<double> prod = std::conj(v[k]) * v[k + 1];
    acc.add(prod.real());
  }
  return acc.value();
}

}  // namespace vncut
