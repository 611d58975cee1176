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

#include "shiftbound/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftbound {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

Mat ginibre(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  }
  return g;
}

}  // namespace

Vec random_pure_ket(Rng& rng, int dim) {
  Vec v = ginibre(rng, dim, 1).col(0);
  return v / v.norm();
}

DensityOperator random_pure(Rng& rng, int dim) {
  return DensityOperator::pure(random_pure_ket(rng, dim));
}

DensityOperator random_density(Rng& rng, int dim, int rank) {
  if (rank < 1 || rank > dim) throw std::invalid_argument("random_density: bad rank");
  Mat g = ginibre(rng, dim, rank);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::from_matrix(hermitize(rho));
}

Mat random_unitary(Rng& rng, int dim) {
  Mat g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (int i = 0; i < dim; ++i) {
    cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

Povm random_finite_povm(Rng& rng, int dim, int elements, double perturbation) {
  if (elements < 1 || elements > dim) {
    throw std::invalid_argument("random_finite_povm: need 1 <= elements <= dim");
  }
  Mat u = random_unitary(rng, dim);
  std::vector<Mat> ops(elements, Mat::Zero(dim, dim));
  for (int c = 0; c < dim; ++c) {
    ops[c % elements] += u.col(c) * u.col(c).adjoint();
  }
  if (perturbation > 0) {
    for (Mat& m : ops) {
      Mat g = ginibre(rng, dim, dim);
      m += perturbation * (g * g.adjoint()) / dim;
    }
    Mat total = Mat::Zero(dim, dim);
    for (const Mat& m : ops) total += m;
    Mat s = psd_sqrt(total).inverse();
    for (Mat& m : ops) m = hermitize(s * m * s);
  }
  return Povm::finite(std::move(ops));
}

Povm random_rank1_povm(Rng& rng, int dim, int elements) {
  if (elements < dim) throw std::invalid_argument("random_rank1_povm: need elements >= dim");
  std::vector<Vec> kets;
  Mat total = Mat::Zero(dim, dim);
  for (int i = 0; i < elements; ++i) {
    Vec v = ginibre(rng, dim, 1).col(0);
    kets.push_back(v);
    total += v * v.adjoint();
  }
  Mat s = psd_sqrt(total).inverse();
  std::vector<Mat> ops;
  ops.reserve(elements);
  for (const Vec& v : kets) {
    Vec w = s * v;
    ops.push_back(w * w.adjoint());
  }
  return Povm::finite(std::move(ops));
}

Povm random_grid_povm(Rng& rng, int dim, const UniformGrid& grid, int band) {
  if (!grid.periodic) throw std::invalid_argument("random_grid_povm: periodic grid required");
  // band-limited operator field T(x) = sum_{|k|<=band} C_k e^{i k 2pi x / P}
  std::vector<Mat> coeff;
  for (int k = -band; k <= band; ++k) coeff.push_back(ginibre(rng, dim, dim) / std::sqrt(dim));
  const double omega = 2.0 * std::numbers::pi / grid.period();
  std::vector<Mat> ops(grid.count);
  Mat total = Mat::Zero(dim, dim);
  for (int x = 0; x < grid.count; ++x) {
    Mat t = Mat::Zero(dim, dim);
    for (int k = -band; k <= band; ++k) {
      t += coeff[k + band] * std::exp(cplx(0, k * omega * grid.node(x)));
    }
    ops[x] = t * t.adjoint();
    total += ops[x] * grid.step;
  }
  Mat s = psd_sqrt(total).inverse();
  for (Mat& m : ops) m = hermitize(s * m * s);
  return Povm::grid_density(grid, std::move(ops));
}

GriddedDistribution random_smooth_prior(Rng& rng, const UniformGrid& grid, int band) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> amp_c(band + 1), amp_s(band + 1);
  for (int k = 0; k <= band; ++k) {
    amp_c[k] = gauss(rng);
    amp_s[k] = gauss(rng);
  }
  const double omega = grid.periodic ? 2.0 * std::numbers::pi / grid.period() : 1.0;
  RVec mass(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    double field = 0.0;
    for (int k = 1; k <= band; ++k) {
      field += amp_c[k] * std::cos(k * omega * grid.node(i)) +
               amp_s[k] * std::sin(k * omega * grid.node(i));
    }
    mass[i] = std::exp(field / std::sqrt(double(band)));
  }
  return GriddedDistribution(grid, std::move(mass), /*renormalize=*/true);
}

Generator random_integer_generator(Rng& rng, int dim, int max_level, bool allow_degeneracy) {
  if (max_level < 1) throw std::invalid_argument("random_integer_generator: max_level < 1");
  std::uniform_int_distribution<int> pick(0, max_level);
  RVec values(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) values[i] = pick(rng);
    std::sort(values.data(), values.data() + dim);
    bool has_distinct = values[dim - 1] > values[0];
    if (!has_distinct) continue;
    if (!allow_degeneracy) {
      // resample until all distinct (requires max_level >= dim - 1)
      bool distinct = true;
      for (int i = 1; i < dim; ++i) {
        if (values[i] == values[i - 1]) distinct = false;
      }
      if (!distinct) continue;
    }
    break;
  }
  Mat u = random_unitary(rng, dim);
  Mat g = u * values.asDiagonal() * u.adjoint();
  return Generator::from_matrix(hermitize(g), SpectrumKind::Discrete, values[0]);
}

}  // namespace shiftbound
