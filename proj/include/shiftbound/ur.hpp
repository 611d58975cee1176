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

#ifndef SHIFTBOUND_UR_HPP
#define SHIFTBOUND_UR_HPP

#include <optional>
#include <string>
#include <vector>

#include "shiftbound/distribution.hpp"
#include "shiftbound/generator.hpp"
#include "shiftbound/povm.hpp"
#include "shiftbound/random.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

/// One evaluated entropic uncertainty relation: lhs >= rhs up to tolerance.
struct UrCheckResult {
  double lhs = 0.0;    // nats
  double rhs = 0.0;    // nats
  std::string relation;
  std::string inputs_digest;

  double slack() const { return lhs - rhs; }
  bool passes(double tol) const { return slack() >= -tol; }
};

/// max over element pairs of the largest singular value of
/// A_j^{1/2} B_k^{1/2}.
double overlap_norm(const Povm& a, const Povm& b);

/// H(A) + H(B) >= -2 ln overlap_norm for finite POVMs.
UrCheckResult check_eur_discrete(const DensityOperator& state, const Povm& a, const Povm& b);

/// Rank-1 strengthening: rhs gains the state entropy,
/// H(A) + H(B) >= -ln max ||A^{1/2}B^{1/2}||^2 + S[rho].
UrCheckResult check_eur_rank1(const DensityOperator& state, const Povm& a, const Povm& b);

/// Number-phase relation H(N) + H(Phi) >= ln 2 pi under the covariant phase
/// measurement; with `with_state_entropy` the rank-1 strengthening adds
/// S[rho] to the rhs.
UrCheckResult check_number_phase(const DensityOperator& state, const UniformGrid& grid,
                                 bool with_state_entropy = false);

struct QpCheckResult {
  UrCheckResult proven;   // H(Q) + H(P) >= ln 2 pi
  UrCheckResult strong;   // H(Q) + H(P) - S[rho] >= ln 2 pi
  double h_q = 0.0;
  double h_p = 0.0;
  double optimal_rhs = 0.0;  // ln(pi e), saturated by Gaussian pure states
};

/// Position/momentum discretization on a line grid; the momentum law comes
/// from the unitary Fourier transform of the grid state. Throws when the
/// momentum tail mass beyond 1e-8 signals aliasing.
QpCheckResult check_qp_discretized(const Vec& wavefunction, const UniformGrid& grid);
QpCheckResult check_qp_discretized(const Mat& rho_position, const UniformGrid& grid);

struct BinnedConvergence {
  std::vector<std::pair<double, double>> sequence;  // (eps, H(C^P) + ln eps)
  double limit;                                     // differential entropy at base resolution
  bool monotone_nonincreasing;
};

/// Coarse-grains the measurement law of a grid POVM into bins of width eps
/// (each a multiple of the base step) and reports H(C^P) + ln eps against
/// the base-resolution differential entropy.
BinnedConvergence binned_convergence(const Povm& povm, const DensityOperator& state,
                                     const std::vector<double>& eps_list);

/// Covariant relation H(G) + H(M) >= ln pi e for a continuous surrogate
/// generator, with M the canonically conjugate measurement blurred by an
/// optional periodic kernel (identity kernel = conjugate measurement).
UrCheckResult check_covariant_relation(const Generator& gen, const DensityOperator& state,
                                       int conjugate_nodes,
                                       const std::vector<double>& blur_kernel = {});

struct Rank2SearchOutcome {
  int trials = 0;
  int violations = 0;
  double worst_slack = 0.0;
  int worst_trial = -1;  // seed index regenerating the worst instance
  std::string worst_digest;
};

/// Randomized search for a counterexample to the conjectured rank-1
/// continuous-pair relation on finite surrogates. Quarantined: outcomes are
/// reported, never asserted.
Rank2SearchOutcome rank2_counterexample_search(int trials, int dim, std::uint64_t seed,
                                               double tol = 1e-3);

/// FNV-1a digest of raw double data; used to fingerprint check inputs.
std::string digest_bytes(const void* data, std::size_t len);
std::string digest_state(const DensityOperator& state);

}  // namespace shiftbound

#endif  // SHIFTBOUND_UR_HPP
