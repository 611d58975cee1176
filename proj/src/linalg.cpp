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

#include "shiftbound/linalg.hpp"

#include <stdexcept>

namespace shiftbound {

double max_abs(const Mat& m) {
  return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& m) {
  return max_abs(m - m.adjoint());
}

Mat hermitize(const Mat& m) {
  return 0.5 * (m + m.adjoint());
}

HermEig herm_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver failed");
  }
  return HermEig{es.eigenvalues(), es.eigenvectors()};
}

Mat psd_sqrt(const Mat& m, double clamp, double psd_tol) {
  HermEig eig = herm_eig(m);
  RVec vals = eig.values;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -psd_tol) {
      throw std::invalid_argument("psd_sqrt: matrix is not PSD (eigenvalue " +
                                  std::to_string(vals[i]) + ")");
    }
    vals[i] = vals[i] < clamp ? 0.0 : std::sqrt(vals[i]);
  }
  return eig.vectors * vals.asDiagonal() * eig.vectors.adjoint();
}

double op_norm(const Mat& m) {
  // Largest singular value = sqrt of largest eigenvalue of M^dagger M.
  HermEig eig = herm_eig(m.adjoint() * m);
  double top = eig.values[eig.values.size() - 1];
  return top > 0 ? std::sqrt(top) : 0.0;
}

double unitary_defect(const Mat& u) {
  Mat id = Mat::Identity(u.rows(), u.cols());
  return max_abs(u.adjoint() * u - id);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

double min_eigenvalue(const Mat& m) {
  return herm_eig(m).values[0];
}

double real_trace_product(const Mat& a, const Mat& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

double expectation(const Mat& rho, const Mat& obs) {
  return real_trace_product(rho, obs);
}

}  // namespace shiftbound
