// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Prints the two pointer-damping factors side by side: the quantum factor
// from the truncated phase observable and the semiclassical factor from the
// phase-space average. They share slope conventions only at the origin up to
// sqrt(pi/2); by r ~ 3 both saturate near one.

#include <cmath>
#include <cstdio>

#include "vncut/vncut.hpp"

int main() {
  using namespace vncut;

  std::printf("%6s  %18s  %18s  %10s\n", "r", "quantum", "semiclassical", "ratio");
  for (int i = 0; i <= 12; ++i) {
    double r = 0.25 * i;
    double s = s_factor(r);
    double b = semiclassical_factor(r);
    double ratio = (r == 0.0) ? 1.0 / std::sqrt(0.5 * std::acos(-1.0)) : s / b;
    std::printf("%6.2f  %18.12f  %18.12f  %10.6f\n", r, s, b, ratio);
  }

  // The same factors damp the mean readout shift of the phase chain.
  double r = 2.0, mu = std::acos(-1.0) / 6.0;
  PhaseChainConfig cfg{1, std::acos(-1.0) / 2.0 - mu, r};
  std::printf("\nmean shift at r=%.1f, mu=pi/6:\n", r);
  std::printf("  undamped        %+.12f\n", std::cos(mu));
  std::printf("  quantum         %+.12f\n", mean_shift_quantum(cfg));
  std::printf("  semiclassical   %+.12f\n", mean_shift_semiclassical_closed(r, mu));
  return 0;
}
