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

#ifndef SHIFTBOUND_GENERATOR_HPP
#define SHIFTBOUND_GENERATOR_HPP

#include <optional>
#include <vector>

#include "shiftbound/grid.hpp"
#include "shiftbound/linalg.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

enum class SpectrumKind { Discrete, ContinuousSurrogate };

/// Hermitian shift generator with its eigenstructure. Eigenvalues within
/// cluster_tol of each other are treated as one degenerate level; each level
/// carries its projector. Discrete generators expose the minimum spectral
/// gap; continuous surrogates record their grid spacing instead, so that
/// gap-dependent formulas are never silently applied to them.
class Generator {
 public:
  static Generator from_matrix(Mat g, SpectrumKind kind = SpectrumKind::Discrete,
                               std::optional<double> lower_bound = std::nullopt,
                               std::optional<double> cluster_tol = std::nullopt);
  static Generator from_eigenvalues(const RVec& values,
                                    std::optional<double> lower_bound = std::nullopt);

  /// Truncated photon-number operator diag(0..dim-1); bounded below by 0.
  static Generator number(int dim);

  /// Two-mode difference generator (N_A - N_B)/2 on the subspace with
  /// N_A + N_B <= n_max; its 2*n_max+1 distinct levels are spaced by 1/2.
  static Generator mach_zehnder(int n_max);

  /// Momentum on a position grid via Fourier conjugation; the surrogate
  /// eigenvalue spacing is 2*pi/(count*step).
  static Generator momentum_surrogate(const UniformGrid& position_grid);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Mat& matrix() const { return matrix_; }
  SpectrumKind kind() const { return kind_; }

  const RVec& raw_eigenvalues() const { return raw_values_; }
  const Mat& eigenvectors() const { return raw_vectors_; }

  int level_count() const { return static_cast<int>(distinct_.size()); }
  double level(int i) const { return distinct_[i]; }
  const std::vector<double>& levels() const { return distinct_; }
  /// Projector onto the eigenspace of level i.
  Mat projector(int i) const;
  /// Orthonormal basis of the eigenspace of level i (dim x multiplicity).
  Mat eigenspace_basis(int i) const;
  int multiplicity(int i) const;
  bool rank1_levels() const;

  std::optional<double> min_gap() const { return min_gap_; }
  bool bounded_below() const { return lower_bound_.has_value(); }
  std::optional<double> lower_bound() const { return lower_bound_; }
  std::optional<double> surrogate_spacing() const { return surrogate_spacing_; }

 private:
  Generator() = default;
  Mat matrix_;
  RVec raw_values_;
  Mat raw_vectors_;
  std::vector<double> distinct_;
  std::vector<std::pair<int, int>> ranges_;  // [begin, end) eigenvector columns per level
  std::optional<double> min_gap_;
  std::optional<double> lower_bound_;
  std::optional<double> surrogate_spacing_;
  SpectrumKind kind_ = SpectrumKind::Discrete;
};

/// e^{-iGx} rho e^{iGx}, computed in the eigenbasis of G.
DensityOperator apply_shift(const DensityOperator& state, const Generator& gen, double x);

/// Shift unitary e^{-iGx}.
Mat shift_unitary(const Generator& gen, double x);

/// Minimum adjacent difference of the distinct eigenvalues after clustering
/// to degeneracy_tol. Errors with fewer than two distinct levels.
double min_spectral_gap(const Generator& gen, double degeneracy_tol);

/// G (x) I + I (x) G with the combined spectrum reclustered.
Generator tensor_sum(const Generator& a, const Generator& b);

/// Level probabilities p(g_i) = tr[rho Gamma_i] over distinct eigenvalues.
RVec level_distribution(const Generator& gen, const DensityOperator& state);

/// Shannon entropy of the generator's level distribution, H(G).
double generator_entropy(const Generator& gen, const DensityOperator& state);

/// <|G - g_ref|> over the level distribution.
double generator_mean_abs_dev(const Generator& gen, const DensityOperator& state, double g_ref);

/// Median of the level distribution (strongest reference choice).
double generator_median(const Generator& gen, const DensityOperator& state);

}  // namespace shiftbound

#endif  // SHIFTBOUND_GENERATOR_HPP
