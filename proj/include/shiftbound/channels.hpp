// Copyright 2026 The shiftbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHIFTBOUND_CHANNELS_HPP
#define SHIFTBOUND_CHANNELS_HPP

#include "shiftbound/linalg.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

/// Glauber displacement operator exp(alpha a^dag - alpha* a) on the truncated
/// Fock space, via eigendecomposition of the truncated generator. Exactly
/// unitary on the truncation; its action approximates the untruncated
/// operator only for |alpha|^2 well below dim.
Mat displacement_operator(cplx alpha, int dim);

struct GaussianChannelOptions {
  int radial_nodes = 64;
  int angular_nodes = 64;
  double radius_factor = 6.0;     // quadrature radius = factor * sqrt(n_lambda)
  double max_trace_defect = 1e-3;
};

struct GaussianChannelResult {
  DensityOperator state;
  /// |tr - 1| before renormalization; measures Fock-truncation bias.
  double trace_defect;
};

/// Random-displacement channel with Gaussian weight
/// (pi n_lambda)^{-1} exp(-|alpha|^2 / n_lambda), integrated on a polar grid
/// (Gauss-Legendre radially, uniform angularly). Adds n_lambda photons on
/// average. The result is renormalized only if the trace defect stays within
/// options.max_trace_defect; a larger defect signals insufficient truncation
/// and throws.
GaussianChannelResult gaussian_noise_channel(const DensityOperator& state, double n_lambda,
                                             const GaussianChannelOptions& options = {});

}  // namespace shiftbound

#endif  // SHIFTBOUND_CHANNELS_HPP
