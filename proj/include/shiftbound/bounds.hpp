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

#ifndef SHIFTBOUND_BOUNDS_HPP
#define SHIFTBOUND_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "shiftbound/distribution.hpp"
#include "shiftbound/generator.hpp"
#include "shiftbound/povm.hpp"

namespace shiftbound {

namespace consts {
/// sqrt(2 pi / e^3) ~ 0.559
double sqrt_2pi_over_e3();
/// (2 pi e^3)^{-1/2} ~ 0.089
double inv_sqrt_2pi_e3();
/// (2 pi e)^{-1/2} ~ 0.242
double inv_sqrt_2pi_e();
/// sqrt(pi / 2e) ~ 0.76
double sqrt_pi_over_2e();
/// 0.154 sqrt(2 pi e^3) ~ 1.73, the crossover scale against the timing bound
double tsang_crossover();
}  // namespace consts

/// Prior-information scaling constant K_I with its provenance.
struct KiEstimate {
  enum class Method {
    ExactSupremum,        // reciprocal supremum of prior (*) eigenstate responses
    QmaxLower,            // 1 / q_max
    IgnoranceLower,       // [ int q^2 ]^{-1}
    CovariantContinuous,  // pi e
    CovariantPhase,       // 2 pi
  };
  double value = 0.0;
  Method method = Method::ExactSupremum;
  double grid_step = 0.0;   // resolution the supremum was scanned at
  bool refined = false;     // golden-section refinement applied
  bool approximate = false; // continuous-surrogate evaluation
};

/// Which achieved quantity a bound entry is a floor for. None marks
/// reference values (baselines, K_I constants, capacity caps) that are
/// reported but never gate pass/fail.
enum class CompareAxis { None, DeltaX, EntropyY, Relative, EnsembleLength };

struct BoundEntry {
  std::string tag;          // stable formula tag, used as the JSON key
  double value = 0.0;
  std::string assumptions;  // e.g. "g = g_min, factor 2 dropped"
  bool conjecture = false;
  bool applicable = true;
  std::string reason;       // why not applicable
  CompareAxis axis = CompareAxis::None;

  bool gating() const { return axis != CompareAxis::None && applicable && !conjecture; }
};

struct Achieved {
  double delta_x = 0.0;  // root mean square deviation of the estimate
  double h_y = 0.0;      // error entropy, nats
  double relative = 0.0; // delta_x / L
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  std::optional<Achieved> achieved;

  BoundEntry& add(BoundEntry entry);
  const BoundEntry* find(const std::string& tag) const;
};

/// K_I from the exact supremum over eigenvalues g and shifts y of the prior
/// convolved with the eigenstate response distributions. Degenerate
/// eigenspaces are handled through the largest eigenvalue of the compressed
/// operator on each eigenspace; the scan over y is exhaustive on the grid
/// followed by one parabolic peak refinement around the best node.
KiEstimate ki_exact_discrete(const GriddedDistribution& prior, const Povm& povm,
                             const Generator& gen);

/// K_I >= 1/q_max.
KiEstimate ki_from_qmax(const GriddedDistribution& prior);

/// K_I >= [ int q^2 ]^{-1}, valid for ignorance-respecting estimates.
KiEstimate ki_ignorance(const GriddedDistribution& prior);

/// Surrogate-grid evaluation of the continuous-generator K_I; flagged
/// approximate (the supremum runs over the surrogate eigenvectors).
KiEstimate ki_continuous_surrogate(const GriddedDistribution& prior, const Povm& povm,
                                   const Generator& gen);

/// K_I = pi e, valid for covariant estimates of continuous generators.
KiEstimate ki_covariant_continuous();
/// K_I = 2 pi, valid for covariant phase estimates (integer spectra).
KiEstimate ki_covariant_phase();

/// H(Y) >= ln K_I - H(G).
double error_entropy_floor(const KiEstimate& ki, double h_g);

/// delta X >= K_I (2 pi e)^{-1/2} e^{-H(G)}.
double rms_floor_from_entropy(const KiEstimate& ki, double h_g);

/// exp H(Y) >= K_I e^{-H(G)} (ensemble-length resolution measure).
double ensemble_length_floor(const KiEstimate& ki, double h_g);

/// delta X >= (2 pi e^3)^{-1/2} K_I / (c + f Delta^{-1} <|G-g|>), with
/// c=1, f=2 for discrete spectra (f=1 when g = g_min), c=0, Delta=1 for
/// continuous spectra.
double generic_bound(const KiEstimate& ki, double madev, std::optional<double> gap,
                     SpectrumKind kind, bool use_gmin);

/// Relative floor delta X / L >= (2 pi e^3)^{-1/2} / (1 + f m Delta^{-1}
/// <|G-g|>_single) for a uniform prior of length L over m copies.
double relative_resolution_bound(int m, double madev_single, double gap, bool use_gmin);

/// Covariant-estimate floor sqrt(pi/2e) / (f m <|G-g|>), continuous spectra.
double covariant_bound(int m, double madev_single, bool use_gmin);

/// Conjectured relative floor for continuous spectra and a uniform prior of
/// length L; never used in pass/fail gating.
BoundEntry conjectured_relative_bound_continuous(double interval_length, double madev,
                                                 bool use_gmin);

struct MzBounds {
  double absolute;  // delta Theta >= (2 pi e)^{-1/2} K_I / (2 N_max + 1)
  double relative;  // delta Theta / L >= (2 pi e)^{-1/2} / (2 m N_max + 1)
};

/// Interferometric bounds from the photon-number cap H(G) <= ln(2 N_max + 1).
MzBounds mz_bounds(int n_max, const KiEstimate& ki, int m);

/// Discrete-Hamiltonian time bounds: absolute floor from 1/q_max, the m-copy
/// relative floor, and the level-count floor 0.242/(m D) when D is given.
BoundReport time_bounds(double e_mean, double e0, double gap_e, double q_max, double tau, int m,
                        std::optional<int> d_levels);

/// Constrained relative floor 0.154/(tau <E-e0>) sqrt(1 - 0.329/(tau <E-e0>));
/// absent when tau <E-e0> < 0.690.
std::optional<double> tsang_bound(double tau, double e_dev);

/// Additive outcome noise: delta X >= sqrt(base^2 + (2 pi e)^{-1} e^{2 H(Z)}).
double noisy_additive_bound(double base, double h_z);

/// Rank-1 generator bounds with the probe passed through a noisy map:
/// every floor gains the factor e^{S[noisy probe]} (m = 1 only). The
/// generator is required to have rank-1 eigenprojectors.
BoundReport noisy_rank1_bounds(const Generator& gen, const KiEstimate& ki, double madev_noisy,
                               double s_noisy, bool use_gmin);

/// Entropy floor of the Gaussian noise map: ln(1+n) + n ln(1+1/n); the
/// weaker ln(1+n) is returned alongside.
struct GaussianNoiseEntropyFloor {
  double strong;
  double weak;
};
GaussianNoiseEntropyFloor gaussian_noise_entropy_floor(double n_lambda);

/// Relative phase-estimate floor under Gaussian noise:
/// (2 pi e^3)^{-1/2} / (1 + <N>/(n_lambda + 1)).
double noisy_phase_relative_bound(double n_mean, double n_lambda);

/// Approximate cap log2(1 / relative_floor) on the shift/estimate mutual
/// information, in bits. Reported, never asserted.
double mutual_info_cap(double relative_floor);

struct BaselineBounds {
  double cramer_rao;  // 1 / (2 sqrt(m) Delta G)
  double van_trees;   // Delta G -> sqrt(Var G + F_q)
};

/// Comparison baselines; fisher_q is the prior Fisher information.
BaselineBounds baseline_bounds(double var_g, int m, double fisher_q);

}  // namespace shiftbound

#endif  // SHIFTBOUND_BOUNDS_HPP
