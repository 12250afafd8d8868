// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace vncut {

// Bad argument or violated precondition. The CLI maps this to exit code 1.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A runtime numerical check failed: an internal consistency assertion, a
// non-converged iteration, mass lost beyond tolerance. Exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or written. Exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vncut
