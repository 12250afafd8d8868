// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Uniform grids, sampled densities on them, and the shift machinery shared by
// the measurement-chain pipelines. Everything is immutable after construction.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "vncut/accumulate.hpp"
#include "vncut/errors.hpp"

namespace vncut {

namespace detail {

inline double trapezoid_weight(int i, int n) {
  return (i == 0 || i == n - 1) ? 0.5 : 1.0;
}

}  // namespace detail

// Uniform 1-D grid with inclusive endpoints. Nodes come from the affine blend
// ((n-1-i)*lo + i*hi)/(n-1), which hits both endpoints exactly and makes
// symmetric ranges [-a, a] exactly symmetric node-by-node.
class Grid1D {
 public:
  Grid1D(double lo, double hi, int n) : lo_(lo), hi_(hi), n_(n) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw validation_error("Grid1D: bounds must be finite");
    }
    if (!(lo < hi)) {
      throw validation_error("Grid1D: lower bound must be strictly below upper bound");
    }
    if (n < 2) {
      throw validation_error("Grid1D: need at least two nodes");
    }
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int n() const { return n_; }
  double step() const { return (hi_ - lo_) / (n_ - 1); }

  double at(int i) const {
    return ((n_ - 1 - i) * lo_ + i * hi_) / (n_ - 1);
  }

  std::vector<double> nodes() const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = at(i);
    return x;
  }

  bool operator==(const Grid1D& other) const {
    return lo_ == other.lo_ && hi_ == other.hi_ && n_ == other.n_;
  }

 private:
  double lo_;
  double hi_;
  int n_;
};

inline bool same_step(const Grid1D& a, const Grid1D& b, double rel_tol = 1e-12) {
  double ha = a.step(), hb = b.step();
  return std::abs(ha - hb) <= rel_tol * std::max(ha, hb);
}

// Output grid of a convolution of supports: [a.lo + b.lo, a.hi + b.hi] with
// the common step. Requires equal steps.
inline Grid1D minkowski_sum_grid(const Grid1D& a, const Grid1D& b) {
  if (!same_step(a, b)) {
    throw validation_error(
        "minkowski_sum_grid: grid steps differ; resample one input first");
  }
  return Grid1D(a.lo() + b.lo(), a.hi() + b.hi(), a.n() + b.n() - 1);
}

// Non-negative sampled density on a uniform grid. The stored mass is its
// trapezoid integral, computed once at construction; operations that promise
// a definite mass check against it explicitly.
class GridDensity1D {
 public:
  GridDensity1D(Grid1D grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n()) {
      throw validation_error("GridDensity1D: value count does not match grid");
    }
    double vmax = 0.0;
    for (double v : values_) {
      if (!std::isfinite(v)) throw validation_error("GridDensity1D: non-finite value");
      vmax = std::max(vmax, std::abs(v));
    }
    // Band-limited resampling can leave negative fuzz at round-off scale;
    // clamp that, reject anything genuinely negative.
    double fuzz = 1e-12 * vmax;
    for (double& v : values_) {
      if (v < 0.0) {
        if (v < -fuzz) throw validation_error("GridDensity1D: negative density value");
        v = 0.0;
      }
    }
    mass_ = integrate_values(grid_, values_);
  }

  // Checked constructor: additionally requires the trapezoid mass to land
  // within mass_tol of target_mass.
  GridDensity1D(Grid1D grid, std::vector<double> values, double target_mass,
                double mass_tol)
      : GridDensity1D(grid, std::move(values)) {
    if (std::abs(mass_ - target_mass) > mass_tol) {
      throw numerical_error("GridDensity1D: mass " + std::to_string(mass_) +
                            " misses target " + std::to_string(target_mass));
    }
  }

  // Normalized Gaussian with the given mean and standard deviation. Fails if
  // the grid clips its tails beyond mass_tol.
  static GridDensity1D gaussian(const Grid1D& grid, double mean, double sigma,
                                double mass_tol = 1e-9) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mean)) {
      throw validation_error("GridDensity1D::gaussian: bad mean or sigma");
    }
    std::vector<double> v(static_cast<std::size_t>(grid.n()));
    double norm = 1.0 / (sigma * std::sqrt(2.0 * std::acos(-1.0)));
    for (int i = 0; i < grid.n(); ++i) {
      double z = (grid.at(i) - mean) / sigma;
      v[static_cast<std::size_t>(i)] = norm * std::exp(-0.5 * z * z);
    }
    GridDensity1D out(grid, std::move(v));
    if (std::abs(out.mass_ - 1.0) > mass_tol) {
      throw validation_error("GridDensity1D::gaussian: grid clips the distribution");
    }
    return out;
  }

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double mass() const { return mass_; }

  double first_moment() const {
    detail::Accumulator acc;
    int n = grid_.n();
    for (int i = 0; i < n; ++i) {
      acc.add(detail::trapezoid_weight(i, n) * grid_.at(i) *
              values_[static_cast<std::size_t>(i)]);
    }
    return acc.value() * grid_.step();
  }

  double mean() const { return first_moment() / mass_; }

  double variance() const {
    double mu = mean();
    detail::Accumulator acc;
    int n = grid_.n();
    for (int i = 0; i < n; ++i) {
      double d = grid_.at(i) - mu;
      acc.add(detail::trapezoid_weight(i, n) * d * d *
              values_[static_cast<std::size_t>(i)]);
    }
    return acc.value() * grid_.step() / mass_;
  }

  static double integrate_values(const Grid1D& grid, const std::vector<double>& v) {
    detail::Accumulator acc;
    int n = grid.n();
    for (int i = 0; i < n; ++i) {
      acc.add(detail::trapezoid_weight(i, n) * v[static_cast<std::size_t>(i)]);
    }
    return acc.value() * grid.step();
  }

 private:
  Grid1D grid_;
  std::vector<double> values_;
  double mass_;
};

// Non-negative density on a tensor-product phase-space grid, row-major with
// the position index outermost.
class PhaseSpaceDensity {
 public:
  PhaseSpaceDensity(Grid1D grid_q, Grid1D grid_p, std::vector<double> values)
      : grid_q_(grid_q), grid_p_(grid_p), values_(std::move(values)) {
    if (values_.size() !=
        static_cast<std::size_t>(grid_q_.n()) * static_cast<std::size_t>(grid_p_.n())) {
      throw validation_error("PhaseSpaceDensity: value count does not match grids");
    }
    for (double v : values_) {
      if (!std::isfinite(v) || v < 0.0) {
        throw validation_error("PhaseSpaceDensity: values must be finite and non-negative");
      }
    }
    mass_ = compute_mass();
  }

  template <typename F>
  static PhaseSpaceDensity from_function(const Grid1D& gq, const Grid1D& gp, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(gq.n()) * static_cast<std::size_t>(gp.n()));
    for (int i = 0; i < gq.n(); ++i) {
      double q = gq.at(i);
      for (int k = 0; k < gp.n(); ++k) {
        v[static_cast<std::size_t>(i) * gp.n() + k] = f(q, gp.at(k));
      }
    }
    return PhaseSpaceDensity(gq, gp, std::move(v));
  }

  const Grid1D& grid_q() const { return grid_q_; }
  const Grid1D& grid_p() const { return grid_p_; }
  const std::vector<double>& values() const { return values_; }
  double value(int iq, int ip) const {
    return values_[static_cast<std::size_t>(iq) * grid_p_.n() + ip];
  }
  double mass() const { return mass_; }

  GridDensity1D marginal_q() const {
    int nq = grid_q_.n(), np = grid_p_.n();
    std::vector<double> m(static_cast<std::size_t>(nq));
    for (int i = 0; i < nq; ++i) {
      detail::Accumulator acc;
      for (int k = 0; k < np; ++k) {
        acc.add(detail::trapezoid_weight(k, np) * value(i, k));
      }
      m[static_cast<std::size_t>(i)] = acc.value() * grid_p_.step();
    }
    return GridDensity1D(grid_q_, std::move(m));
  }

  GridDensity1D marginal_p() const {
    int nq = grid_q_.n(), np = grid_p_.n();
    std::vector<double> m(static_cast<std::size_t>(np));
    for (int k = 0; k < np; ++k) {
      detail::Accumulator acc;
      for (int i = 0; i < nq; ++i) {
        acc.add(detail::trapezoid_weight(i, nq) * value(i, k));
      }
      m[static_cast<std::size_t>(k)] = acc.value() * grid_q_.step();
    }
    return GridDensity1D(grid_p_, std::move(m));
  }

 private:
  double compute_mass() const {
    int nq = grid_q_.n(), np = grid_p_.n();
    detail::Accumulator acc;
    for (int i = 0; i < nq; ++i) {
      double wq = detail::trapezoid_weight(i, nq);
      detail::Accumulator row;
      for (int k = 0; k < np; ++k) {
        row.add(detail::trapezoid_weight(k, np) * value(i, k));
      }
      acc.add(wq * row.value());
    }
    return acc.value() * grid_q_.step() * grid_p_.step();
  }

  Grid1D grid_q_;
  Grid1D grid_p_;
  std::vector<double> values_;
  double mass_;
};

namespace detail {

inline bool is_integral_shift(double bins, double tol = 1e-9) {
  return std::abs(bins - std::round(bins)) <= tol;
}

// Trapezoid mass of a density beyond the cut: over [cut, hi] when side > 0,
// over [lo, cut] when side < 0. The partial cell at the cut is handled by
// linear interpolation.
inline double tail_mass(const Grid1D& grid, const std::vector<double>& v, double cut,
                        int side) {
  double h = grid.step();
  if (side > 0) {
    if (cut <= grid.lo()) return GridDensity1D::integrate_values(grid, v);
    if (cut >= grid.hi()) return 0.0;
  } else {
    if (cut >= grid.hi()) return GridDensity1D::integrate_values(grid, v);
    if (cut <= grid.lo()) return 0.0;
  }
  double t = (cut - grid.lo()) / h;
  int j = static_cast<int>(std::floor(t));
  j = std::clamp(j, 0, grid.n() - 2);
  double f = t - j;
  double vcut = (1.0 - f) * v[static_cast<std::size_t>(j)] +
                f * v[static_cast<std::size_t>(j + 1)];
  Accumulator acc;
  if (side > 0) {
    acc.add(0.5 * (1.0 - f) * (vcut + v[static_cast<std::size_t>(j + 1)]) * h);
    for (int i = j + 1; i < grid.n() - 1; ++i) {
      acc.add(0.5 * (v[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i + 1)]) * h);
    }
  } else {
    acc.add(0.5 * f * (v[static_cast<std::size_t>(j)] + vcut) * h);
    for (int i = 0; i < j; ++i) {
      acc.add(0.5 * (v[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i + 1)]) * h);
    }
  }
  return acc.value();
}

// Density mass that a shift by delta would push past the grid edge.
inline double off_grid_mass(const Grid1D& grid, const std::vector<double>& v,
                            double delta) {
  if (delta == 0.0) return 0.0;
  if (delta > 0.0) return tail_mass(grid, v, grid.hi() - delta, +1);
  return tail_mass(grid, v, grid.lo() - delta, -1);
}

// out[i] += coeff * v(x_i - delta) with two-point (linear) interpolation.
// Distributes each sample's weight between two bins, so plain-sum mass and
// first moment are preserved exactly whenever nothing leaves the grid.
inline void accumulate_shifted_linear(std::vector<double>& out,
                                      const std::vector<double>& v, double shift_bins,
                                      double coeff) {
  int n = static_cast<int>(v.size());
  double k = std::floor(shift_bins);
  double f = shift_bins - k;
  int ik = static_cast<int>(k);
  for (int i = 0; i < n; ++i) {
    int j0 = i - ik - 1;
    int j1 = i - ik;
    double acc = 0.0;
    if (f > 0.0 && j0 >= 0 && j0 < n) acc += f * v[static_cast<std::size_t>(j0)];
    if (j1 >= 0 && j1 < n) acc += (1.0 - f) * v[static_cast<std::size_t>(j1)];
    if (acc != 0.0) out[static_cast<std::size_t>(i)] += coeff * acc;
  }
}

inline std::vector<double> shift_density_linear(const std::vector<double>& v,
                                                double shift_bins) {
  std::vector<double> out(v.size(), 0.0);
  accumulate_shifted_linear(out, v, shift_bins, 1.0);
  return out;
}

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  double px = std::acos(-1.0) * x;
  return std::sin(px) / px;
}

// Band-limited resampling of complex samples: out[i] = sum_j v[j] sinc(i - s - j).
// Exact index move when s is integral. O(n^2) otherwise; used only on coarse
// grids where the shift does not land on the lattice.
inline std::vector<std::complex<double>> shift_samples_bandlimited(
    const std::vector<std::complex<double>>& v, double shift_bins) {
  int n = static_cast<int>(v.size());
  std::vector<std::complex<double>> out(v.size(), {0.0, 0.0});
  if (is_integral_shift(shift_bins)) {
    int k = static_cast<int>(std::llround(shift_bins));
    for (int i = 0; i < n; ++i) {
      int j = i - k;
      if (j >= 0 && j < n) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(j)];
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    Accumulator re, im;
    for (int j = 0; j < n; ++j) {
      double w = sinc(static_cast<double>(i) - shift_bins - static_cast<double>(j));
      re.add(w * v[static_cast<std::size_t>(j)].real());
      im.add(w * v[static_cast<std::size_t>(j)].imag());
    }
    out[static_cast<std::size_t>(i)] = {re.value(), im.value()};
  }
  return out;
}

}  // namespace detail
}  // namespace vncut
