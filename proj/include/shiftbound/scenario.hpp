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

#ifndef SHIFTBOUND_SCENARIO_HPP
#define SHIFTBOUND_SCENARIO_HPP

#include <functional>
#include <optional>

#include "shiftbound/bounds.hpp"
#include "shiftbound/distribution.hpp"
#include "shiftbound/generator.hpp"
#include "shiftbound/povm.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

/// One estimation scheme: probe, shift generator, prior, estimate POVM and
/// copy count. Grids must share one step; periodic grids must coincide, and
/// a line prior must sit inside the POVM's parameter range.
struct Scenario {
  DensityOperator probe;
  Generator gen;
  GriddedDistribution prior;
  Povm povm;
  int copies = 1;
};

void validate(const Scenario& s);

/// Prior-averaged POVM element at shift y (snapped to the nearest multiple
/// of the grid step): sum_x q(x) e^{iGx} M_{x+y} e^{-iGx} step.
Mat averaged_povm(const Scenario& s, double y);

struct ErrorLaw {
  GriddedDistribution law;  // normalized law of Y = estimate - true value
  double raw_total;         // pre-normalization total mass
  double defect() const { return std::abs(raw_total - 1.0); }
};

/// Law of the deviation Y, wrapped into the centered period for periodic
/// parameters. Throws when the quadrature defect exceeds 1e-4.
ErrorLaw error_distribution(const Scenario& s);

/// Measurement law for the probe replaced by an eigenstate of level
/// `which`; degenerate levels use the compressed-response maximizer.
GriddedDistribution eigenstate_response(const Povm& povm, const Generator& gen, int which);

/// True iff some eigenstate response differs from uniform by more than tol
/// in total variation: the necessary condition for an estimate to exploit
/// prior information.
bool exploits_prior_necessary_condition(const Povm& povm, const Generator& gen, double tol);

/// Checks M_{x+y} = e^{-iGy} M_x e^{iGy} on a sample of grid shifts.
bool is_covariant(const Povm& povm, const Generator& gen, double tol, int sample_shifts = 16);

/// Tensor-composed probe and generator for m copies (guard: dim^m <= 4096);
/// the joint POVM is supplied separately by the caller.
Scenario m_copy_scenario(const Scenario& s, int m, Povm joint_povm);

/// Weighted mean with sum(weights) = 1; periodic samples are unwrapped
/// relative to the first sample before averaging and the result re-wrapped.
double shift_invariant_joint_estimate(const std::vector<double>& samples,
                                      const std::vector<double>& weights,
                                      std::optional<double> period = std::nullopt);

/// Builds the two-copy joint POVM by binning estimator preimages on the
/// product grid (ties to the lower bin) and tests its covariance under the
/// two-copy generator. `estimator` defaults to the shift-invariant weighted
/// mean; supplying a non-shift-invariant function makes the check fail.
bool joint_estimator_covariance_check(
    const Povm& povm, const Generator& gen, const std::vector<double>& weights, double tol,
    std::optional<std::function<double(double, double)>> estimator = std::nullopt);

struct NoiseContext {
  double n_lambda = 0.0;        // Gaussian channel strength
  double pre_noise_n_mean = 0;  // <N> of the clean probe
  double s_noisy = 0.0;         // von Neumann entropy of the noisy probe
};

struct RunOptions {
  std::optional<double> interval_length;  // L; default: prior support length
  std::optional<NoiseContext> noise;
  bool include_baselines = true;
  double floor_tolerance = 1e-3;  // epsilon_grid for violation checks
};

struct RunResult {
  ErrorLaw error;
  Achieved achieved;
  BoundReport report;
  double h_g = 0.0;
  KiEstimate ki;
};

/// Inputs for bound assembly; the POVM is optional (without it K_I falls
/// back to the 1/q_max floor).
struct BoundInputs {
  const DensityOperator& probe;
  const Generator& gen;
  const GriddedDistribution& prior;
  const Povm* povm = nullptr;
  int copies = 1;
};

struct AssembledBounds {
  BoundReport report;
  KiEstimate ki;
  double h_g = 0.0;
};

/// Every applicable bound for the scheme, provenance-tagged.
AssembledBounds assemble_bound_report(const BoundInputs& in, const RunOptions& options);

/// Simulates the scheme and joins the achieved performance with every
/// applicable bound (m = 1 simulation; `copies` only scales the m-copy
/// relative floors).
RunResult run_scenario(const Scenario& s, const RunOptions& options = {});

/// Tags of non-conjecture floors the achieved values violate beyond tol.
std::vector<std::string> violated_floors(const BoundReport& report, const Achieved& achieved,
                                         double tol);

/// Length of the prior's support (count of positive-mass nodes times step).
double prior_support_length(const GriddedDistribution& prior);

/// True when all positive masses agree to 1e-9 (uniform over support).
bool is_uniform_prior(const GriddedDistribution& prior);

}  // namespace shiftbound

#endif  // SHIFTBOUND_SCENARIO_HPP
