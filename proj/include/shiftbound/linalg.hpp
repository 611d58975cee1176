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

#ifndef SHIFTBOUND_LINALG_HPP
#define SHIFTBOUND_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace shiftbound {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Largest entrywise absolute value.
double max_abs(const Mat& m);

/// max |M - M^dagger| entrywise.
double hermiticity_defect(const Mat& m);

/// (M + M^dagger)/2.
Mat hermitize(const Mat& m);

struct HermEig {
  RVec values;   // ascending
  Mat vectors;   // columns, same order
};

/// Eigendecomposition of a Hermitian matrix (the Hermitian part is used).
HermEig herm_eig(const Mat& m);

/// Square root of a PSD matrix via eigendecomposition. Eigenvalues below
/// `clamp` are clamped to zero; eigenvalues below -psd_tol throw.
Mat psd_sqrt(const Mat& m, double clamp = 1e-12, double psd_tol = 1e-10);

/// Largest singular value.
double op_norm(const Mat& m);

/// max |U^dagger U - I| entrywise.
double unitary_defect(const Mat& u);

/// Kronecker product.
Mat kron(const Mat& a, const Mat& b);

/// Deterministic pairwise summation (order-independent reductions).
double pairwise_sum(std::span<const double> xs);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Mat& m);

/// Re tr[a * b].
double real_trace_product(const Mat& a, const Mat& b);

/// tr[rho * obs] for Hermitian obs (real part).
double expectation(const Mat& rho, const Mat& obs);

}  // namespace shiftbound

#endif  // SHIFTBOUND_LINALG_HPP
