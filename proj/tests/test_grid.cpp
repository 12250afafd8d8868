// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "vncut/grid.hpp"

using namespace vncut;

TEST_CASE("Grid1D hits both endpoints exactly") {
  Grid1D g(-12.0, 12.0, 2017);
  CHECK(g.at(0) == -12.0);
  CHECK(g.at(2016) == 12.0);
  CHECK(g.n() == 2017);
  CHECK(g.step() == Catch::Approx(24.0 / 2016).epsilon(1e-15));
}

TEST_CASE("symmetric grids are symmetric node by node") {
  Grid1D g(-7.25, 7.25, 512);
  for (int i = 0; i < g.n(); ++i) {
    CHECK(g.at(i) == -g.at(g.n() - 1 - i));
  }
}

TEST_CASE("Grid1D rejects bad construction") {
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 8), validation_error);
  CHECK_THROWS_AS(Grid1D(2.0, -2.0, 8), validation_error);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), validation_error);
  CHECK_THROWS_AS(Grid1D(0.0, std::nan(""), 8), validation_error);
}

TEST_CASE("trapezoid integration is exact for linear functions") {
  Grid1D g(-3.0, 5.0, 97);
  std::vector<double> v(97);
  for (int i = 0; i < 97; ++i) v[i] = 2.0 + 0.25 * g.at(i) + 1.0;  // keep positive
  double got = GridDensity1D::integrate_values(g, v);
  double want = 8.0 * 3.0 + 0.25 * 0.5 * (25.0 - 9.0);
  CHECK(got == Catch::Approx(want).margin(1e-12));
}

TEST_CASE("GridDensity1D validates shape and sign") {
  Grid1D g(0.0, 1.0, 11);
  CHECK_THROWS_AS(GridDensity1D(g, std::vector<double>(10, 1.0)), validation_error);
  std::vector<double> neg(11, 1.0);
  neg[4] = -0.5;
  CHECK_THROWS_AS(GridDensity1D(g, neg), validation_error);
  std::vector<double> fuzz(11, 1.0);
  fuzz[4] = -1e-14;  // round-off scale, clamped to zero
  GridDensity1D d(g, fuzz);
  CHECK(d[4] == 0.0);
}

TEST_CASE("gaussian density has the right moments") {
  Grid1D g(-12.0, 12.0, 2017);
  GridDensity1D d = GridDensity1D::gaussian(g, 0.75, 0.3);
  CHECK(std::abs(d.mass() - 1.0) < 1e-12);
  CHECK(std::abs(d.mean() - 0.75) < 1e-12);
  CHECK(std::abs(d.variance() - 0.09) < 1e-12);
}

TEST_CASE("gaussian clipped by the grid is rejected") {
  Grid1D g(-2.0, 2.0, 257);
  CHECK_THROWS_AS(GridDensity1D::gaussian(g, 0.0, 1.5), validation_error);
  CHECK_THROWS_AS(GridDensity1D::gaussian(g, 1.9, 0.3), validation_error);
}

TEST_CASE("checked constructor enforces the stated mass") {
  Grid1D g(-6.0, 6.0, 513);
  GridDensity1D base = GridDensity1D::gaussian(g, 0.0, 0.5);
  std::vector<double> half = base.values();
  for (double& x : half) x *= 0.5;
  CHECK_THROWS_AS(GridDensity1D(g, half, 1.0, 1e-6), numerical_error);
  CHECK_NOTHROW(GridDensity1D(g, half, 0.5, 1e-6));
}

TEST_CASE("minkowski_sum_grid spans the sum of supports") {
  Grid1D a(-12.0, 12.0, 2017);
  Grid1D b(-12.0, 12.0, 2017);
  Grid1D s = minkowski_sum_grid(a, b);
  CHECK(s.lo() == -24.0);
  CHECK(s.hi() == 24.0);
  CHECK(s.n() == 4033);
  CHECK(same_step(a, s));
  Grid1D c(-12.0, 12.0, 1000);
  CHECK_THROWS_AS(minkowski_sum_grid(a, c), validation_error);
}

TEST_CASE("phase-space density mass and marginals") {
  Grid1D gq(-8.0, 8.0, 257);
  Grid1D gp(-7.0, 7.0, 193);
  const double pi = std::acos(-1.0);
  auto blob = PhaseSpaceDensity::from_function(gq, gp, [&](double q, double p) {
    double dq = q - 0.4, dp = p + 0.3;
    return std::exp(-dq * dq - dp * dp) / pi;
  });
  CHECK(std::abs(blob.mass() - 1.0) < 1e-12);
  GridDensity1D mq = blob.marginal_q();
  GridDensity1D mp = blob.marginal_p();
  CHECK(std::abs(mq.mass() - 1.0) < 1e-12);
  CHECK(std::abs(mq.mean() - 0.4) < 1e-12);
  CHECK(std::abs(mp.mean() + 0.3) < 1e-12);
  CHECK(std::abs(mq.variance() - 0.5) < 1e-10);
}

TEST_CASE("phase-space density rejects bad input") {
  Grid1D g(-1.0, 1.0, 5);
  CHECK_THROWS_AS(PhaseSpaceDensity(g, g, std::vector<double>(24, 1.0)), validation_error);
  std::vector<double> v(25, 1.0);
  v[7] = -1.0;
  CHECK_THROWS_AS(PhaseSpaceDensity(g, g, v), validation_error);
}

TEST_CASE("off-grid mass measures what a shift would lose") {
  Grid1D g(-12.0, 12.0, 2017);
  GridDensity1D d = GridDensity1D::gaussian(g, 0.0, 0.5);
  CHECK(detail::off_grid_mass(g, d.values(), 1.0) < 1e-12);
  double lost = detail::off_grid_mass(g, d.values(), 11.9);
  CHECK(lost > 0.4);
  CHECK(lost < 0.6);
  double lost_neg = detail::off_grid_mass(g, d.values(), -11.9);
  CHECK(std::abs(lost - lost_neg) < 1e-12);
}

TEST_CASE("linear shift by whole bins is an exact index move") {
  Grid1D g(-12.0, 12.0, 2017);
  GridDensity1D d = GridDensity1D::gaussian(g, 0.0, 0.4);
  double h = g.step();
  std::vector<double> out = detail::shift_density_linear(d.values(), 3.0 / h);
  int k = static_cast<int>(std::llround(3.0 / h));
  for (int i = k; i < g.n(); ++i) {
    CHECK(out[static_cast<std::size_t>(i)] == d[i - k]);
  }
}

TEST_CASE("fractional linear shift preserves mass and first moment") {
  Grid1D g(-10.0, 10.0, 801);
  std::mt19937 rng(20260821);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(801, 0.0);
  for (int i = 250; i < 550; ++i) v[static_cast<std::size_t>(i)] = u(rng);

  double mass0 = 0.0, mom0 = 0.0;
  for (int i = 0; i < 801; ++i) {
    mass0 += v[static_cast<std::size_t>(i)];
    mom0 += g.at(i) * v[static_cast<std::size_t>(i)];
  }
  double delta = 0.7316;
  std::vector<double> out = detail::shift_density_linear(v, delta / g.step());
  double mass1 = 0.0, mom1 = 0.0;
  for (int i = 0; i < 801; ++i) {
    mass1 += out[static_cast<std::size_t>(i)];
    mom1 += g.at(i) * out[static_cast<std::size_t>(i)];
  }
  CHECK(std::abs(mass1 - mass0) < 1e-11 * mass0);
  CHECK(std::abs(mom1 - (mom0 + delta * mass0)) < 1e-9);
}

TEST_CASE("band-limited shift moves a smooth packet accurately") {
  Grid1D g(-6.0, 6.0, 241);
  double h = g.step();
  auto packet = [](double x) { return std::exp(-x * x); };
  std::vector<std::complex<double>> v(241);
  for (int i = 0; i < 241; ++i) v[static_cast<std::size_t>(i)] = {packet(g.at(i)), 0.0};

  SECTION("integral shift is exact") {
    std::vector<std::complex<double>> out = detail::shift_samples_bandlimited(v, 17.0);
    for (int i = 17; i < 241; ++i) {
      CHECK(out[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(i - 17)]);
    }
  }

  SECTION("non-integral shift reproduces the shifted function") {
    double delta = 0.3181 * h;
    std::vector<std::complex<double>> out = detail::shift_samples_bandlimited(v, 0.3181);
    double worst = 0.0;
    for (int i = 40; i < 200; ++i) {
      worst = std::max(worst,
                       std::abs(out[static_cast<std::size_t>(i)].real() - packet(g.at(i) - delta)));
    }
    CHECK(worst < 1e-6);
  }
}
