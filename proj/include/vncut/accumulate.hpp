// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compensated summation shared by every module that reduces long vectors.

#pragma once

#include <cmath>

namespace vncut {
namespace detail {

// Neumaier variant of compensated summation. Deterministic for a fixed
// visiting order, robust when terms vary over many orders of magnitude.
class Accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail
}  // namespace vncut
