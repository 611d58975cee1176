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

#include "shiftbound/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shiftbound {

namespace {

// exp(i r K) with K = -i (a^dag - a) truncated; D(r e^{i theta}) follows by
// conjugation with the number-phase rotation e^{i theta N}.
struct RadialKernel {
  RVec eigenvalues;
  Mat eigenvectors;
};

RadialKernel radial_kernel(int dim) {
  Mat k = Mat::Zero(dim, dim);
  for (int n = 0; n < dim - 1; ++n) {
    const double c = std::sqrt(static_cast<double>(n + 1));
    k(n + 1, n) = cplx(0, -c);  // -i a^dag
    k(n, n + 1) = cplx(0, c);   // +i a
  }
  HermEig eig = herm_eig(k);
  return RadialKernel{eig.values, eig.vectors};
}

Mat radial_displacement(const RadialKernel& kernel, double r) {
  Vec phases(kernel.eigenvalues.size());
  for (int i = 0; i < kernel.eigenvalues.size(); ++i) {
    phases[i] = std::exp(cplx(0, r * kernel.eigenvalues[i]));
  }
  return kernel.eigenvectors * phases.asDiagonal() * kernel.eigenvectors.adjoint();
}

// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace

Mat displacement_operator(cplx alpha, int dim) {
  if (dim < 2) throw std::invalid_argument("displacement_operator: dim < 2");
  if (alpha == cplx(0, 0)) return Mat::Identity(dim, dim);
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  RadialKernel kernel = radial_kernel(dim);
  Mat d = radial_displacement(kernel, r);
  if (theta != 0.0) {
    Vec rot(dim);
    for (int n = 0; n < dim; ++n) rot[n] = std::exp(cplx(0, theta * n));
    d = rot.asDiagonal() * d * rot.conjugate().asDiagonal();
  }
  return d;
}

GaussianChannelResult gaussian_noise_channel(const DensityOperator& state, double n_lambda,
                                             const GaussianChannelOptions& options) {
  if (n_lambda < 0) throw std::invalid_argument("gaussian_noise_channel: n_lambda < 0");
  if (n_lambda == 0.0) {
    return GaussianChannelResult{state, 0.0};  // delta-kernel limit
  }
  const int dim = state.dim();
  const double radius = options.radius_factor * std::sqrt(n_lambda);

  // The displacements act on a padded space wide enough for the quadrature
  // weight to die out; the mass left above the requested truncation after
  // projecting back is the trace defect.
  const double r_eff = std::min(radius, 5.7 * std::sqrt(n_lambda));
  const double reach = std::sqrt(static_cast<double>(dim)) + r_eff;
  const int big = static_cast<int>(std::ceil(reach * reach)) + 16;

  std::vector<double> rn, rw;
  gauss_legendre_unit(options.radial_nodes, rn, rw);

  RadialKernel kernel = radial_kernel(big);

  // low-rank factor of the probe, embedded in the padded space
  HermEig rho_eig = herm_eig(state.matrix());
  int rank = 0;
  for (int i = 0; i < dim; ++i) {
    if (rho_eig.values[i] > 1e-15) ++rank;
  }
  Mat factor = Mat::Zero(big, rank);
  int col = 0;
  for (int i = 0; i < dim; ++i) {
    if (rho_eig.values[i] > 1e-15) {
      factor.col(col).head(dim) = rho_eig.vectors.col(i) * std::sqrt(rho_eig.values[i]);
      ++col;
    }
  }

  const int na = options.angular_nodes;
  Vec rot(big);
  Mat out = Mat::Zero(dim, dim);
  double kept = 0.0, total = 0.0;
  for (int i = 0; i < options.radial_nodes; ++i) {
    const double r = radius * rn[i];
    const double wr = rw[i] * radius * r * std::exp(-r * r / n_lambda) /
                      (std::numbers::pi * n_lambda) * (2 * std::numbers::pi / na);
    Mat dr = radial_displacement(kernel, r);
    for (int j = 0; j < na; ++j) {
      const double theta = 2 * std::numbers::pi * j / na;
      for (int n = 0; n < big; ++n) rot[n] = std::exp(cplx(0, theta * n));
      // phi = R(theta) D(r) R(theta)^dag factor
      Mat phi = rot.asDiagonal() * (dr * (rot.conjugate().asDiagonal() * factor));
      total += wr * phi.squaredNorm();
      Mat head = phi.topRows(dim);
      kept += wr * head.squaredNorm();
      out += wr * (head * head.adjoint());
    }
  }

  // `total` only misses quadrature error; `kept` additionally misses what the
  // requested truncation cannot hold.
  const double defect = std::abs(total - 1.0) + std::max(0.0, total - kept);
  if (defect > options.max_trace_defect) {
    throw std::runtime_error("gaussian_noise_channel: trace defect " + std::to_string(defect) +
                             " signals insufficient truncation");
  }
  out /= kept;
  return GaussianChannelResult{DensityOperator::from_matrix(hermitize(out)), defect};
}

}  // namespace shiftbound
