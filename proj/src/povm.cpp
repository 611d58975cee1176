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

#include "shiftbound/povm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftbound {

namespace {
constexpr double kPsdTol = 1e-10;
constexpr double kCompletenessTol = 1e-8;
}  // namespace

Povm::Povm(Kind kind, std::vector<Mat> ops, std::optional<UniformGrid> grid)
    : kind_(kind), ops_(std::move(ops)), grid_(grid) {
  if (ops_.empty()) throw std::invalid_argument("Povm: no elements");
  const Eigen::Index d = ops_[0].rows();
  for (const Mat& m : ops_) {
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument("Povm: inconsistent element dimensions");
    }
    if (min_eigenvalue(m) < -kPsdTol) {
      throw std::invalid_argument("Povm: element not PSD to -1e-10");
    }
  }
  const double defect = completeness_defect();
  if (defect > kCompletenessTol) {
    throw std::invalid_argument("Povm: completeness defect " + std::to_string(defect) +
                                " exceeds 1e-8");
  }
}

Povm Povm::finite(std::vector<Mat> elements) {
  return Povm(Kind::FiniteIndexed, std::move(elements), std::nullopt);
}

Povm Povm::grid_density(UniformGrid grid, std::vector<Mat> densities) {
  validate(grid);
  if (static_cast<int>(densities.size()) != grid.count) {
    throw std::invalid_argument("Povm: densities/grid size mismatch");
  }
  return Povm(Kind::GridDensity, std::move(densities), grid);
}

const UniformGrid& Povm::grid() const {
  if (!grid_) throw std::logic_error("Povm: finite POVM has no grid");
  return *grid_;
}

double Povm::completeness_defect() const {
  const Eigen::Index d = ops_[0].rows();
  Mat sum = Mat::Zero(d, d);
  for (const Mat& m : ops_) sum += m;
  if (kind_ == Kind::GridDensity) sum *= grid_->step;
  return max_abs(sum - Mat::Identity(d, d));
}

RVec Povm::outcome_probs(const DensityOperator& state) const {
  if (kind_ != Kind::FiniteIndexed) {
    throw std::logic_error("outcome_probs: not a finite POVM");
  }
  RVec p(size());
  for (int i = 0; i < size(); ++i) {
    p[i] = std::max(0.0, real_trace_product(state.matrix(), ops_[i]));
  }
  return p;
}

Povm canonical_phase_povm(int dim, const UniformGrid& grid) {
  if (dim < 1) throw std::invalid_argument("canonical_phase_povm: dim < 1");
  if (!grid.periodic || std::abs(grid.period() - 2 * std::numbers::pi) > 1e-9) {
    throw std::invalid_argument("canonical_phase_povm: grid must be periodic over [0, 2pi)");
  }
  if (grid.count < dim) {
    throw std::invalid_argument("canonical_phase_povm: need at least dim grid nodes");
  }
  std::vector<Mat> densities;
  densities.reserve(grid.count);
  const double norm = 1.0 / (2 * std::numbers::pi);
  for (int k = 0; k < grid.count; ++k) {
    const double phi = grid.node(k);
    Vec e(dim);
    for (int n = 0; n < dim; ++n) e[n] = std::exp(cplx(0, -n * phi));
    densities.push_back(norm * (e * e.adjoint()));
  }
  return Povm::grid_density(grid, std::move(densities));
}

Povm covariant_generator_povm(const Generator& gen, const UniformGrid& grid) {
  if (gen.kind() != SpectrumKind::Discrete) {
    throw std::invalid_argument("covariant_generator_povm: discrete generator required");
  }
  if (!grid.periodic) {
    throw std::invalid_argument("covariant_generator_povm: periodic grid required");
  }
  const double period = grid.period();
  const double base = 2 * std::numbers::pi / period;
  // every level difference must be an integer multiple of the base gap
  for (int i = 1; i < gen.level_count(); ++i) {
    const double q = (gen.level(i) - gen.level(0)) / base;
    if (std::abs(q - std::lround(q)) > 1e-9) {
      throw std::invalid_argument(
          "covariant_generator_povm: spectrum incommensurate with the grid period");
    }
  }
  // degeneracy ladders: the j-th eigenvector of every level joins ladder j
  int ladders = 0;
  for (int i = 0; i < gen.level_count(); ++i) ladders = std::max(ladders, gen.multiplicity(i));
  const int d = gen.dim();
  std::vector<Mat> densities;
  densities.reserve(grid.count);
  for (int k = 0; k < grid.count; ++k) {
    const double x = grid.node(k);
    Mat m = Mat::Zero(d, d);
    for (int l = 0; l < ladders; ++l) {
      Vec e = Vec::Zero(d);
      for (int i = 0; i < gen.level_count(); ++i) {
        if (l >= gen.multiplicity(i)) continue;
        e += std::exp(cplx(0, -gen.level(i) * x)) * gen.eigenspace_basis(i).col(l);
      }
      m += (e * e.adjoint()) / period;
    }
    densities.push_back(std::move(m));
  }
  return Povm::grid_density(grid, std::move(densities));
}

Povm projective_generator_povm(const Generator& gen, const UniformGrid& grid) {
  std::vector<Mat> densities(grid.count, Mat::Zero(gen.dim(), gen.dim()));
  for (int i = 0; i < gen.level_count(); ++i) {
    const int node = grid.nearest_index(gen.level(i));
    densities[node] += gen.projector(i) / grid.step;
  }
  return Povm::grid_density(grid, std::move(densities));
}

double hermite_function(int n, double x) {
  // psi_0 = pi^{-1/4} e^{-x^2/2}; upward recurrence in n.
  const double psi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return psi0;
  double prev = psi0;
  double cur = std::sqrt(2.0) * x * psi0;
  for (int k = 1; k < n; ++k) {
    double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Povm quadrature_povm(int dim, const UniformGrid& grid) {
  if (grid.periodic) throw std::invalid_argument("quadrature_povm: grid must be a line grid");
  std::vector<Mat> densities;
  densities.reserve(grid.count);
  for (int k = 0; k < grid.count; ++k) {
    Vec psi(dim);
    for (int n = 0; n < dim; ++n) psi[n] = hermite_function(n, grid.node(k));
    densities.push_back(psi * psi.adjoint());
  }
  return Povm::grid_density(grid, std::move(densities));
}

Povm tensor_product(const Povm& a, const Povm& b) {
  if (a.kind() != Povm::Kind::FiniteIndexed || b.kind() != Povm::Kind::FiniteIndexed) {
    throw std::invalid_argument("tensor_product: only finite POVMs compose elementwise");
  }
  std::vector<Mat> out;
  out.reserve(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) out.push_back(kron(a.op(i), b.op(j)));
  }
  return Povm::finite(std::move(out));
}

RVec grid_masses(const Povm& povm, const DensityOperator& state) {
  if (povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("grid_masses: not a grid POVM");
  }
  RVec m(povm.size());
  for (int i = 0; i < povm.size(); ++i) {
    m[i] = std::max(0.0, real_trace_product(state.matrix(), povm.op(i)) * povm.grid().step);
  }
  return m;
}

}  // namespace shiftbound
