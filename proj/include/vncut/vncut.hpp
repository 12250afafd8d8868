// Copyright 2026 The vncut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vncut/accumulate.hpp"
#include "vncut/bessel.hpp"
#include "vncut/convolve.hpp"
#include "vncut/errors.hpp"
#include "vncut/experiment.hpp"
#include "vncut/grid.hpp"
#include "vncut/hilbert.hpp"
#include "vncut/linear_chain.hpp"
#include "vncut/phase_chain.hpp"
#include "vncut/quadrature.hpp"
#include "vncut/semiclassical.hpp"
#include "vncut/tridiag.hpp"
#include "vncut/version.hpp"
