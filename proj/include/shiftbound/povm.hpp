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

#ifndef SHIFTBOUND_POVM_HPP
#define SHIFTBOUND_POVM_HPP

#include <optional>
#include <vector>

#include "shiftbound/generator.hpp"
#include "shiftbound/grid.hpp"
#include "shiftbound/linalg.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

/// Positive-operator-valued measure. Either a finite indexed family whose
/// elements sum to the identity, or an operator density per unit parameter
/// on a uniform grid whose Riemann sum (density * step) is the identity.
/// Elements are PSD to -1e-10 and completeness holds to 1e-8 in max-entry
/// norm; both are checked at construction.
class Povm {
 public:
  enum class Kind { FiniteIndexed, GridDensity };

  static Povm finite(std::vector<Mat> elements);
  static Povm grid_density(UniformGrid grid, std::vector<Mat> densities);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(ops_[0].rows()); }
  int size() const { return static_cast<int>(ops_.size()); }
  /// Element (FiniteIndexed) or density (GridDensity) at index i.
  const Mat& op(int i) const { return ops_[i]; }
  const std::vector<Mat>& ops() const { return ops_; }
  const UniformGrid& grid() const;
  bool periodic() const { return kind_ == Kind::GridDensity && grid_->periodic; }

  double completeness_defect() const;

  /// Outcome probabilities (FiniteIndexed) for a state.
  RVec outcome_probs(const DensityOperator& state) const;

 private:
  Povm(Kind kind, std::vector<Mat> ops, std::optional<UniformGrid> grid);
  Kind kind_;
  std::vector<Mat> ops_;
  std::optional<UniformGrid> grid_;
};

/// Covariant phase measurement with rank-1 density
/// (2 pi)^{-1} sum_{m,n} e^{-i(m-n)phi} |m><n| on a periodic grid over
/// [0, 2 pi). Completeness is exact for grids with at least dim nodes.
Povm canonical_phase_povm(int dim, const UniformGrid& grid);

/// Canonical covariant measurement of an arbitrary commensurate discrete
/// generator: eigenvectors are grouped into degeneracy ladders (one vector
/// per distinct level), each contributing a rank-1 kernel
/// P^{-1} sum e^{-i(g-g')x}. The grid period must be 2 pi over the base gap
/// that all level differences are multiples of. Reduces to the phase kernel
/// for non-degenerate unit-spaced spectra.
Povm covariant_generator_povm(const Generator& gen, const UniformGrid& grid);

/// Projective measurement of the generator itself, relabelled onto the
/// parameter axis: each eigenprojector becomes a point mass at the grid node
/// nearest its eigenvalue.
Povm projective_generator_povm(const Generator& gen, const UniformGrid& grid);

/// Quadrature (homodyne-style) measurement of X = (a + a^dag)/sqrt(2) on a
/// truncated Fock space: rank-1 densities |x><x| built from the number-state
/// position wavefunctions on a line grid.
Povm quadrature_povm(int dim, const UniformGrid& grid);

/// Position wavefunction <x|n> of the n-th number state (ħ = 1 units,
/// X = (a + a^dag)/sqrt(2)); used by quadrature_povm and tests.
double hermite_function(int n, double x);

/// Kronecker product of two finite POVMs (all element pairs).
Povm tensor_product(const Povm& a, const Povm& b);

/// Measurement law of a GridDensity POVM for a state, as mass per node.
RVec grid_masses(const Povm& povm, const DensityOperator& state);

}  // namespace shiftbound

#endif  // SHIFTBOUND_POVM_HPP
