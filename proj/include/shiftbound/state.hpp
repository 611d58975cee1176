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

#ifndef SHIFTBOUND_STATE_HPP
#define SHIFTBOUND_STATE_HPP

#include "shiftbound/linalg.hpp"

namespace shiftbound {

/// Finite-dimensional density operator: Hermitian (to 1e-10 entrywise),
/// unit trace (to 1e-10), smallest eigenvalue >= -1e-10.
class DensityOperator {
 public:
  static DensityOperator from_matrix(Mat rho);
  static DensityOperator pure(const Vec& psi);

  static DensityOperator fock(int dim, int n);
  static DensityOperator coherent(int dim, cplx alpha);
  static DensityOperator thermal(int dim, double nbar);
  static DensityOperator maximally_mixed(int dim);
  /// Normalized superposition sum_n c_n |n>.
  static DensityOperator superposition(int dim, const Vec& coeffs);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Mat& matrix() const { return rho_; }

 private:
  explicit DensityOperator(Mat rho) : rho_(std::move(rho)) {}
  Mat rho_;
};

/// -tr[rho ln rho] in nats; eigenvalues below 1e-14 are treated as zero.
double von_neumann_entropy(const DensityOperator& state);

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

/// tr[rho N] for the truncated number operator diag(0..d-1).
double mean_photon_number(const DensityOperator& state);

}  // namespace shiftbound

#endif  // SHIFTBOUND_STATE_HPP
