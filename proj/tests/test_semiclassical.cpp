// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vncut/semiclassical.hpp"
#include "reference_values.hpp"

using namespace vncut;
using vncut_test::rel_err;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("cosine observable and its conjugate momentum") {
  CHECK(cos_observable(1.0, 0.0) == 1.0);
  CHECK(cos_observable(-2.0, 0.0) == -1.0);
  CHECK(cos_observable(0.0, 3.0) == 0.0);
  CHECK(cos_observable(1.0, 1.0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));

  // (q^2 + p^2)^{3/2} / (2 p)
  CHECK(conjugate_momentum_pc(0.0, 1.0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(conjugate_momentum_pc(3.0, 4.0) == Catch::Approx(125.0 / 8.0).margin(1e-12));
  CHECK(conjugate_momentum_pc(3.0, -4.0) == Catch::Approx(-125.0 / 8.0).margin(1e-12));
  CHECK_THROWS_AS(conjugate_momentum_pc(1.0, 0.0), validation_error);
  CHECK_THROWS_AS(conjugate_momentum_pc(std::nan(""), 1.0), validation_error);
}

TEST_CASE("coherent blob geometry") {
  WignerCoherent w(2.0, pi / 3.0);
  CHECK(w.center_q() == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  CHECK(w.center_p() == Catch::Approx(std::sqrt(6.0)).margin(1e-12));
  CHECK(w.density(w.center_q(), w.center_p()) == Catch::Approx(1.0 / pi).margin(1e-15));
  // isotropic unit-variance-in-each-half coordinate: e^{-1} at distance 1
  CHECK(w.density(w.center_q() + 1.0, w.center_p()) ==
        Catch::Approx(std::exp(-1.0) / pi).margin(1e-15));
}

TEST_CASE("blob density integrates to one on the default grid") {
  for (double r : {0.0, 1.0, 4.0}) {
    PhaseSpaceDensity d = wigner_density(r, pi / 5.0);
    CHECK(std::abs(d.mass() - 1.0) < 1e-9);
  }
}

TEST_CASE("grids that clip the blob are rejected") {
  Grid1D small(-3.0, 3.0, 128);
  CHECK_THROWS_AS(wigner_density(3.0, 0.0, small, small), numerical_error);
}

TEST_CASE("damping factor matches the high-precision references") {
  CHECK(semiclassical_factor(0.0) == 0.0);
  for (const auto& p : vncut_test::kSemiclassicalFactorRef) {
    CHECK(rel_err(semiclassical_factor(p.x), p.value) < 1e-13);
  }
  CHECK_THROWS_AS(semiclassical_factor(-1.0), validation_error);
  CHECK_THROWS_AS(semiclassical_factor(std::nan("")), validation_error);
}

TEST_CASE("damping factor rises monotonically toward one") {
  double prev = 0.0;
  for (int i = 1; i <= 60; ++i) {
    double b = semiclassical_factor(0.1 * i);
    CHECK(b > prev);
    CHECK(b < 1.0);
    prev = b;
  }
}

TEST_CASE("quadrature mean shift agrees with the closed form") {
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    for (double mu : {0.0, pi / 6.0, pi / 3.0}) {
      double closed = mean_shift_semiclassical_closed(r, mu);
      double quad = mean_shift_semiclassical_quadrature(r, mu);
      CHECK(rel_err(quad, closed) < 1e-6);
    }
  }
}

TEST_CASE("quadrature mean shift vanishes at the symmetric phase") {
  CHECK(std::abs(mean_shift_semiclassical_quadrature(1.0, pi / 2.0)) < 1e-12);
}

TEST_CASE("quadrature mean shift is odd under phase mirroring") {
  double f = mean_shift_semiclassical_quadrature(1.5, pi / 3.0);
  double m = mean_shift_semiclassical_quadrature(1.5, pi - pi / 3.0);
  CHECK(std::abs(f + m) < 1e-12);
}

TEST_CASE("origin node on an odd grid is skipped without harm") {
  Grid1D odd = default_phase_grid(3.0, 513);
  PhaseSpaceDensity blob = wigner_density(3.0, pi / 4.0, odd, odd);
  double a = mean_shift_semiclassical_quadrature(blob);
  double b = mean_shift_semiclassical_quadrature(3.0, pi / 4.0);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("readout distribution mean matches the quadrature shift") {
  Grid1D g(-12.0, 12.0, 2017);
  PointerState Phi = PointerState::gaussian(g, 0.0, 0.1);
  for (double r : {0.5, 2.0}) {
    PhaseSpaceDensity blob = wigner_density(r, pi / 3.0);
    ChainResult res = semiclassical_q_distribution(blob, Phi);
    double want = mean_shift_semiclassical_quadrature(blob);
    CHECK(std::abs(res.mean - want) < 1e-12);
    CHECK(std::abs(res.distribution.mass() - 1.0) < 1e-12);
    CHECK(res.method == ChainMethod::classical_cut);
  }
}

TEST_CASE("readout distribution stays inside the unit shift band") {
  Grid1D g(-12.0, 12.0, 2017);
  PointerState Phi = PointerState::gaussian(g, 0.0, 0.1);
  ChainResult res = semiclassical_q_distribution(2.0, pi / 3.0, Phi);
  double tail = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    if (std::abs(g.at(i)) > 1.6) tail = std::max(tail, res.distribution[i]);
  }
  CHECK(tail < 1e-9);
  CHECK_THROWS_AS(semiclassical_q_distribution(wigner_density(1.0, pi / 3.0), Phi, 2),
                  validation_error);
}
