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

#include "shiftbound/generator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shiftbound/distribution.hpp"

namespace shiftbound {

namespace {

double default_cluster_tol(const RVec& values) {
  const double range = values[values.size() - 1] - values[0];
  return range > 0 ? 1e-8 * range : 1e-12;
}

}  // namespace

Generator Generator::from_matrix(Mat g, SpectrumKind kind, std::optional<double> lower_bound,
                                 std::optional<double> cluster_tol) {
  if (g.rows() != g.cols() || g.rows() < 1) {
    throw std::invalid_argument("Generator: not a square matrix");
  }
  if (hermiticity_defect(g) > 1e-10) {
    throw std::invalid_argument("Generator: not Hermitian to 1e-10");
  }
  Generator out;
  out.matrix_ = std::move(g);
  out.kind_ = kind;
  HermEig eig = herm_eig(out.matrix_);
  out.raw_values_ = eig.values;
  out.raw_vectors_ = eig.vectors;

  const double tol = cluster_tol.value_or(default_cluster_tol(eig.values));
  int begin = 0;
  for (int i = 1; i <= eig.values.size(); ++i) {
    if (i == eig.values.size() || eig.values[i] - eig.values[i - 1] > tol) {
      double level = 0.0;
      for (int j = begin; j < i; ++j) level += eig.values[j];
      level /= (i - begin);
      out.distinct_.push_back(level);
      out.ranges_.emplace_back(begin, i);
      begin = i;
    }
  }

  if (kind == SpectrumKind::Discrete && out.distinct_.size() >= 2) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.distinct_.size(); ++i) {
      gap = std::min(gap, out.distinct_[i] - out.distinct_[i - 1]);
    }
    out.min_gap_ = gap;
  }
  out.lower_bound_ = lower_bound;
  return out;
}

Generator Generator::from_eigenvalues(const RVec& values, std::optional<double> lower_bound) {
  Mat g = Mat::Zero(values.size(), values.size());
  for (int i = 0; i < values.size(); ++i) g(i, i) = values[i];
  return from_matrix(std::move(g), SpectrumKind::Discrete, lower_bound);
}

Generator Generator::number(int dim) {
  if (dim < 1) throw std::invalid_argument("Generator::number: dim < 1");
  RVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = i;
  return from_eigenvalues(v, 0.0);
}

Generator Generator::mach_zehnder(int n_max) {
  if (n_max < 1) throw std::invalid_argument("Generator::mach_zehnder: n_max < 1");
  std::vector<double> diag;
  for (int total = 0; total <= n_max; ++total) {
    for (int na = 0; na <= total; ++na) {
      const int nb = total - na;
      diag.push_back(0.5 * (na - nb));
    }
  }
  RVec v = Eigen::Map<RVec>(diag.data(), static_cast<Eigen::Index>(diag.size()));
  return from_eigenvalues(v, -0.5 * n_max);
}

Generator Generator::momentum_surrogate(const UniformGrid& position_grid) {
  validate(position_grid);
  const int n = position_grid.count;
  const double h = position_grid.step;
  const double dp = 2.0 * std::numbers::pi / (n * h);
  // plane waves v_k(j) = e^{i p_k q_j} / sqrt(n) on the centered momentum grid
  Mat v(n, n);
  RVec p(n);
  for (int k = 0; k < n; ++k) {
    p[k] = dp * (k - n / 2);
    for (int j = 0; j < n; ++j) {
      v(j, k) = std::exp(cplx(0, p[k] * position_grid.node(j))) / std::sqrt(double(n));
    }
  }
  Mat g = v * p.asDiagonal() * v.adjoint();
  Generator out = from_matrix(hermitize(g), SpectrumKind::ContinuousSurrogate, std::nullopt);
  out.surrogate_spacing_ = dp;
  return out;
}

Mat Generator::projector(int i) const {
  Mat b = eigenspace_basis(i);
  return b * b.adjoint();
}

Mat Generator::eigenspace_basis(int i) const {
  const auto [begin, end] = ranges_.at(i);
  return raw_vectors_.middleCols(begin, end - begin);
}

int Generator::multiplicity(int i) const {
  const auto [begin, end] = ranges_.at(i);
  return end - begin;
}

bool Generator::rank1_levels() const {
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (ranges_[i].second - ranges_[i].first != 1) return false;
  }
  return true;
}

Mat shift_unitary(const Generator& gen, double x) {
  Vec phases(gen.dim());
  for (int i = 0; i < gen.dim(); ++i) {
    phases[i] = std::exp(cplx(0, -gen.raw_eigenvalues()[i] * x));
  }
  return gen.eigenvectors() * phases.asDiagonal() * gen.eigenvectors().adjoint();
}

DensityOperator apply_shift(const DensityOperator& state, const Generator& gen, double x) {
  if (state.dim() != gen.dim()) {
    throw std::invalid_argument("apply_shift: dimension mismatch");
  }
  if (x == 0.0) return state;
  Mat u = shift_unitary(gen, x);
  return DensityOperator::from_matrix(hermitize(u * state.matrix() * u.adjoint()));
}

double min_spectral_gap(const Generator& gen, double degeneracy_tol) {
  if (gen.kind() != SpectrumKind::Discrete) {
    throw std::invalid_argument("min_spectral_gap: generator is a continuous surrogate");
  }
  const RVec& v = gen.raw_eigenvalues();
  std::vector<double> distinct;
  distinct.push_back(v[0]);
  for (int i = 1; i < v.size(); ++i) {
    if (v[i] - distinct.back() > degeneracy_tol) distinct.push_back(v[i]);
  }
  if (distinct.size() < 2) {
    throw std::invalid_argument("min_spectral_gap: fewer than 2 distinct eigenvalues");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distinct.size(); ++i) {
    gap = std::min(gap, distinct[i] - distinct[i - 1]);
  }
  return gap;
}

Generator tensor_sum(const Generator& a, const Generator& b) {
  Mat ia = Mat::Identity(a.dim(), a.dim());
  Mat ib = Mat::Identity(b.dim(), b.dim());
  Mat g = kron(a.matrix(), ib) + kron(ia, b.matrix());
  std::optional<double> lower;
  if (a.bounded_below() && b.bounded_below()) {
    lower = *a.lower_bound() + *b.lower_bound();
  }
  SpectrumKind kind = (a.kind() == SpectrumKind::Discrete && b.kind() == SpectrumKind::Discrete)
                          ? SpectrumKind::Discrete
                          : SpectrumKind::ContinuousSurrogate;
  return Generator::from_matrix(std::move(g), kind, lower);
}

RVec level_distribution(const Generator& gen, const DensityOperator& state) {
  if (state.dim() != gen.dim()) {
    throw std::invalid_argument("level_distribution: dimension mismatch");
  }
  RVec p(gen.level_count());
  for (int i = 0; i < gen.level_count(); ++i) {
    Mat b = gen.eigenspace_basis(i);
    p[i] = (b.adjoint() * state.matrix() * b).trace().real();
    if (p[i] < 0) p[i] = 0;
  }
  return p;
}

double generator_entropy(const Generator& gen, const DensityOperator& state) {
  return shannon_entropy(level_distribution(gen, state));
}

double generator_mean_abs_dev(const Generator& gen, const DensityOperator& state, double g_ref) {
  RVec p = level_distribution(gen, state);
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += p[i] * std::abs(gen.level(i) - g_ref);
  return s;
}

double generator_median(const Generator& gen, const DensityOperator& state) {
  RVec p = level_distribution(gen, state);
  std::vector<double> values(gen.levels());
  std::vector<double> probs(p.data(), p.data() + p.size());
  return median(values, probs);
}

}  // namespace shiftbound
