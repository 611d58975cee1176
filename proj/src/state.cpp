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

#include "shiftbound/state.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftbound {

namespace {
constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
}  // namespace

DensityOperator DensityOperator::from_matrix(Mat rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw std::invalid_argument("DensityOperator: not a square matrix");
  }
  if (hermiticity_defect(rho) > kHermTol) {
    throw std::invalid_argument("DensityOperator: not Hermitian to 1e-10");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr) +
                                " not within 1e-10 of 1");
  }
  if (min_eigenvalue(rho) < -kPsdTol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond -1e-10");
  }
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::pure(const Vec& psi) {
  const double norm = psi.norm();
  if (norm <= 0) throw std::invalid_argument("DensityOperator::pure: zero vector");
  Vec u = psi / norm;
  return DensityOperator(u * u.adjoint());
}

DensityOperator DensityOperator::fock(int dim, int n) {
  if (n < 0 || n >= dim) throw std::invalid_argument("fock: n out of range");
  Vec psi = Vec::Zero(dim);
  psi[n] = 1.0;
  return pure(psi);
}

DensityOperator DensityOperator::coherent(int dim, cplx alpha) {
  if (dim < 1) throw std::invalid_argument("coherent: dim < 1");
  Vec psi(dim);
  // amplitudes alpha^n / sqrt(n!), then normalized over the truncation
  cplx amp = 1.0;
  for (int n = 0; n < dim; ++n) {
    psi[n] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return pure(psi);
}

DensityOperator DensityOperator::thermal(int dim, double nbar) {
  if (dim < 1) throw std::invalid_argument("thermal: dim < 1");
  if (nbar < 0) throw std::invalid_argument("thermal: nbar < 0");
  RVec p(dim);
  if (nbar == 0) {
    p.setZero();
    p[0] = 1.0;
  } else {
    const double r = nbar / (1.0 + nbar);
    double w = 1.0 / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) {
      p[n] = w;
      w *= r;
    }
    p /= p.sum();  // truncated tail folded back in
  }
  Mat rho = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) rho(n, n) = p[n];
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  if (dim < 1) throw std::invalid_argument("maximally_mixed: dim < 1");
  return DensityOperator(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::superposition(int dim, const Vec& coeffs) {
  if (coeffs.size() > dim) throw std::invalid_argument("superposition: too many coefficients");
  Vec psi = Vec::Zero(dim);
  psi.head(coeffs.size()) = coeffs;
  return pure(psi);
}

double von_neumann_entropy(const DensityOperator& state) {
  HermEig eig = herm_eig(state.matrix());
  std::vector<double> terms;
  terms.reserve(eig.values.size());
  for (int i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values[i];
    terms.push_back(lam > 1e-14 ? -lam * std::log(lam) : 0.0);
  }
  return pairwise_sum(terms);
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_matrix(kron(a.matrix(), b.matrix()));
}

double mean_photon_number(const DensityOperator& state) {
  double s = 0.0;
  for (int n = 0; n < state.dim(); ++n) s += n * state.matrix()(n, n).real();
  return s;
}

}  // namespace shiftbound
