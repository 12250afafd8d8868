// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "vncut/convolve.hpp"

using namespace vncut;

TEST_CASE("convolving gaussians gives the gaussian with summed moments") {
  Grid1D g(-12.0, 12.0, 2017);
  GridDensity1D f = GridDensity1D::gaussian(g, 0.5, 0.3);
  GridDensity1D F = GridDensity1D::gaussian(g, -0.25, 0.4);
  GridDensity1D out = convolve(f, F);

  CHECK(out.grid().lo() == -24.0);
  CHECK(out.grid().n() == 4033);
  CHECK(std::abs(out.mass() - 1.0) < 1e-10);
  CHECK(std::abs(out.mean() - 0.25) < 1e-10);
  CHECK(std::abs(out.variance() - 0.25) < 1e-8);

  double sigma = 0.5;
  double worst = 0.0;
  for (int i = 0; i < out.grid().n(); ++i) {
    double x = out.grid().at(i);
    double want = std::exp(-0.5 * (x - 0.25) * (x - 0.25) / (sigma * sigma)) /
                  (sigma * std::sqrt(2.0 * std::acos(-1.0)));
    worst = std::max(worst, std::abs(out[i] - want));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("an interior spike convolves to a shifted copy") {
  Grid1D g(-4.0, 4.0, 257);
  double h = g.step();
  GridDensity1D F = GridDensity1D::gaussian(g, 0.0, 0.3);
  std::vector<double> spike(257, 0.0);
  int at = 160;
  spike[at] = 1.0 / h;
  GridDensity1D f(g, spike);
  GridDensity1D out = convolve(f, F);
  for (int k = 0; k < 257; ++k) {
    CHECK(std::abs(out[at + k] - F[k]) < 1e-13);
  }
}

TEST_CASE("convolution is symmetric in its arguments") {
  Grid1D g(-5.0, 5.0, 401);
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_density = [&]() {
    std::vector<double> v(401, 0.0);
    for (int i = 30; i < 371; ++i) v[static_cast<std::size_t>(i)] = u(rng);
    std::vector<double> tmp = v;
    double mass = GridDensity1D::integrate_values(g, tmp);
    for (double& x : v) x /= mass;
    return GridDensity1D(g, v);
  };
  GridDensity1D a = random_density();
  GridDensity1D b = random_density();
  GridDensity1D ab = convolve(a, b);
  GridDensity1D ba = convolve(b, a);
  double worst = 0.0;
  for (int i = 0; i < ab.grid().n(); ++i) worst = std::max(worst, std::abs(ab[i] - ba[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("mean of a convolution adds the input means") {
  Grid1D g(-12.0, 12.0, 1345);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(1345, 0.0);
  for (int i = 300; i < 900; ++i) v[static_cast<std::size_t>(i)] = u(rng);
  double mass = GridDensity1D::integrate_values(g, v);
  for (double& x : v) x /= mass;
  GridDensity1D f(g, v);
  GridDensity1D F = GridDensity1D::gaussian(g, 1.5, 0.25);
  GridDensity1D out = convolve(f, F);
  CHECK(std::abs(out.mean() - (f.mean() + F.mean())) < 1e-10);
}

TEST_CASE("mismatched steps are rejected with advice") {
  Grid1D a(-5.0, 5.0, 401);
  Grid1D b(-5.0, 5.0, 301);
  GridDensity1D f = GridDensity1D::gaussian(a, 0.0, 0.5);
  GridDensity1D F = GridDensity1D::gaussian(b, 0.0, 0.5);
  try {
    convolve(f, F);
    FAIL("expected a validation error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("resample") != std::string::npos);
  }
}

TEST_CASE("boundary-supported inputs fail the mass identity") {
  Grid1D g(-12.0, 12.0, 2017);
  std::vector<double> flat(2017, 1.0 / 24.0);
  GridDensity1D f(g, flat);
  CHECK_THROWS_AS(convolve(f, f), numerical_error);
}
