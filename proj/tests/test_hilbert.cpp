// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "vncut/hilbert.hpp"
#include "vncut/quadrature.hpp"
#include "reference_values.hpp"

using namespace vncut;
using vncut_test::rel_err;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("CoherentParams reduces the phase and validates") {
  CoherentParams a(1.0, -pi / 2.0);
  CHECK(a.mu == Catch::Approx(1.5 * pi).epsilon(1e-14));
  CoherentParams b(1.0, 7.0 * pi);
  CHECK(b.mu == Catch::Approx(pi).epsilon(1e-12));
  CHECK_THROWS_AS(CoherentParams(-1.0, 0.0), validation_error);
  CHECK_THROWS_AS(CoherentParams(std::nan(""), 0.0), validation_error);
  CHECK_THROWS_AS(CoherentParams(1.0, std::nan("")), validation_error);
}

TEST_CASE("FockVector rejects degenerate input") {
  CHECK_THROWS_AS(FockVector(std::vector<std::complex<double>>{}), validation_error);
  CHECK_THROWS_AS(FockVector(std::vector<std::complex<double>>{{std::nan(""), 0.0}}),
                  validation_error);
}

TEST_CASE("coherent_state matches the direct amplitude formula") {
  double r = 1.5, mu = 0.7;
  FockVector v = coherent_state(CoherentParams(r, mu), 32);
  double fact = 1.0;
  for (int k = 0; k < 8; ++k) {
    if (k > 0) fact *= k;
    double mag = std::exp(-0.5 * r * r) * std::pow(r, k) / std::sqrt(fact);
    std::complex<double> want = {mag * std::cos(k * mu), mag * std::sin(k * mu)};
    CHECK(std::abs(v[k] - want) < 1e-15);
  }
}

TEST_CASE("coherent_state norm deficit is tiny at the default truncation") {
  for (double r : {0.0, 0.5, 2.0, 4.0, 8.0}) {
    FockVector v = coherent_state(CoherentParams(r, 0.3), default_truncation(r));
    CHECK(v.norm2() <= 1.0 + 1e-12);
    CHECK(1.0 - v.norm2() < 1e-12);
  }
}

TEST_CASE("coherent_state respects the truncation cap") {
  CHECK_THROWS_AS(coherent_state(CoherentParams(1.0, 0.0), 0), validation_error);
  CHECK_THROWS_AS(coherent_state(CoherentParams(1.0, 0.0), 5000), validation_error);
  CHECK_NOTHROW(coherent_state(CoherentParams(1.0, 0.0), 5000, 8192));
}

TEST_CASE("vacuum state is the ground amplitude") {
  FockVector v = coherent_state(CoherentParams(0.0, 1.2), 6);
  CHECK(v[0] == std::complex<double>(1.0, 0.0));
  for (int k = 1; k < 6; ++k) CHECK(std::abs(v[k]) == 0.0);
}

TEST_CASE("derive_mu shifts and reduces") {
  CHECK(derive_mu(pi / 2.0, 1.0, pi / 6.0) == Catch::Approx(pi / 3.0).epsilon(1e-14));
  CHECK(derive_mu(pi / 2.0, -1.0, pi / 6.0) == Catch::Approx(2.0 * pi / 3.0).epsilon(1e-14));
  CHECK(derive_mu(0.1, 3.0, 2.0) == Catch::Approx(0.1 - 6.0 + 2.0 * pi).epsilon(1e-12));
  CHECK_THROWS_AS(derive_mu(std::nan(""), 1.0, 0.1), validation_error);
}

TEST_CASE("cosine operator structure and action") {
  CosOperator c(8);
  CHECK(c.element(3, 4) == 0.5);
  CHECK(c.element(4, 3) == 0.5);
  CHECK(c.element(3, 3) == 0.0);
  CHECK(c.element(2, 5) == 0.0);
  CHECK_THROWS_AS(c.element(8, 0), validation_error);
  CHECK_THROWS_AS(CosOperator(0), validation_error);

  std::vector<std::complex<double>> basis(8, {0.0, 0.0});
  basis[3] = {1.0, 0.0};
  FockVector out = c.apply(FockVector(basis));
  CHECK(out[2] == std::complex<double>(0.5, 0.0));
  CHECK(out[4] == std::complex<double>(0.5, 0.0));
  CHECK(std::abs(out[3]) == 0.0);
}

TEST_CASE("operator eigenvalues match the closed form") {
  const int n = 48;
  std::vector<double> vals = cos_operator(n).eigenvalues();
  for (int k = 0; k < n; ++k) {
    CHECK(vals[static_cast<std::size_t>(k)] ==
          Catch::Approx(std::cos((n - k) * pi / (n + 1))).margin(1e-13));
  }
}

TEST_CASE("solver eigenvectors match the sine profiles") {
  const int n = 24;
  TridiagEigen e = cos_operator(n).eigensystem();
  for (int k : {0, 7, n - 1}) {
    int j = n - k;  // ascending eigenvalue k is cos(j pi / (n + 1))
    double theta = j * pi / (n + 1);
    FockVector profile = cos_eigenvector(theta, n);
    double scale = std::sqrt(pi / (n + 1));
    for (int i = 0; i < n; ++i) {
      double want = scale * profile[i].real();
      double got = e.vectors[static_cast<std::size_t>(k) * n + i];
      CHECK(std::abs(std::abs(got) - std::abs(want)) < 1e-10);
    }
  }
}

TEST_CASE("cos_eigenvector satisfies the eigenvalue relation away from the edge") {
  const int n = 64;
  double theta = 1.1;
  FockVector v = cos_eigenvector(theta, n);
  FockVector cv = cos_operator(n).apply(v);
  for (int k = 0; k + 1 < n; ++k) {
    CHECK(std::abs(cv[k] - std::cos(theta) * v[k]) < 1e-12);
  }
  CHECK_THROWS_AS(cos_eigenvector(0.0, n), validation_error);
  CHECK_THROWS_AS(cos_eigenvector(pi, n), validation_error);
  CHECK_THROWS_AS(cos_eigenvector(-0.3, n), validation_error);
}

TEST_CASE("cos_eigenvector family is orthogonal under the theta integral") {
  const int n = 128;
  Quadrature gl = gauss_legendre(512, 0.0, pi);
  auto overlap = [&](int a, int b) {
    double s = 0.0;
    for (int i = 0; i < 512; ++i) {
      double t = gl.nodes[static_cast<std::size_t>(i)];
      s += gl.weights[static_cast<std::size_t>(i)] * (2.0 / pi) * std::sin((a + 1) * t) *
           std::sin((b + 1) * t);
    }
    return s;
  };
  CHECK(std::abs(overlap(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(17, 17) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(3, 40)) < 1e-12);
  CHECK(std::abs(overlap(n - 1, n - 2)) < 1e-12);
}

TEST_CASE("s_factor matches the high-precision references") {
  CHECK(s_factor(0.0) == 0.0);
  for (const auto& p : vncut_test::kQuantumFactorRef) {
    CHECK(rel_err(s_factor(p.x), p.value) < 1e-13);
  }
  CHECK_THROWS_AS(s_factor(-0.1), validation_error);
  CHECK_THROWS_AS(s_factor(std::nan("")), validation_error);
}

TEST_CASE("s_factor is increasing and saturates from below") {
  double prev = 0.0;
  for (int i = 1; i <= 60; ++i) {
    double r = 0.05 * i;
    double s = s_factor(r);
    CHECK(s > prev);
    CHECK(s < 1.0);
    prev = s;
  }
}

TEST_CASE("expectation_C on a coherent state factorizes into phase and damping") {
  for (double r : {0.3, 1.0, 2.5}) {
    for (double mu : {0.0, 0.4, 2.0}) {
      FockVector v = coherent_state(CoherentParams(r, mu), default_truncation(r));
      CHECK(std::abs(expectation_C(v) - std::cos(mu) * s_factor(r)) < 1e-13);
    }
  }
}

TEST_CASE("expectation_C agrees with the explicit operator route") {
  std::mt19937 rng(31415);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    int n = 12 + 9 * trial;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (auto& x : a) {
      x = {gauss(rng), gauss(rng)};
      norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    FockVector v(a);
    FockVector cv = cos_operator(n).apply(v);
    detail::Accumulator acc;
    for (int k = 0; k < n; ++k) acc.add((std::conj(v[k]) * cv[k]).real());
    CHECK(std::abs(expectation_C(v) - acc.value()) < 1e-14);
  }
}

TEST_CASE("default_truncation grows with amplitude and is generous at zero") {
  CHECK(default_truncation(0.0) == 42);
  CHECK(default_truncation(2.0) > default_truncation(0.5));
  CHECK(default_truncation(8.0) >= 64 + 30);
}
