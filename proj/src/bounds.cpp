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

#include "shiftbound/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shiftbound/fftutil.hpp"

namespace shiftbound {

namespace consts {

namespace {
const double kPi = std::numbers::pi;
const double kE = std::numbers::e;
}  // namespace

double sqrt_2pi_over_e3() { return std::sqrt(2 * kPi / (kE * kE * kE)); }
double inv_sqrt_2pi_e3() { return 1.0 / std::sqrt(2 * kPi * kE * kE * kE); }
double inv_sqrt_2pi_e() { return 1.0 / std::sqrt(2 * kPi * kE); }
double sqrt_pi_over_2e() { return std::sqrt(kPi / (2 * kE)); }
double tsang_crossover() { return 0.154 * std::sqrt(2 * kPi * kE * kE * kE); }

}  // namespace consts

BoundEntry& BoundReport::add(BoundEntry entry) {
  entries.push_back(std::move(entry));
  return entries.back();
}

const BoundEntry* BoundReport::find(const std::string& tag) const {
  for (const BoundEntry& e : entries) {
    if (e.tag == tag) return &e;
  }
  return nullptr;
}

namespace {

// Compressed response sequences (B^dag M_x B per grid node) for one
// eigenspace, correlated against the prior masses, as k x k matrices per
// shift index.
struct CorrelatedResponse {
  std::vector<Mat> bars;  // one k x k matrix per shift node
  bool circular;
};

CorrelatedResponse correlate_eigenspace(const GriddedDistribution& prior, const Povm& povm,
                                        const Mat& basis) {
  const int k = static_cast<int>(basis.cols());
  const int np = povm.size();
  const int nq = prior.size();
  const bool circular = povm.periodic() && prior.periodic();

  // scalar sequences per (p,q) entry of the compressed densities
  std::vector<std::vector<cplx>> seq(k * k, std::vector<cplx>(np));
  for (int x = 0; x < np; ++x) {
    Mat c = basis.adjoint() * povm.op(x) * basis;
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) seq[p * k + q][x] = c(p, q);
    }
  }

  std::vector<cplx> qm(nq);
  for (int j = 0; j < nq; ++j) qm[j] = prior.mass(j);

  CorrelatedResponse out;
  out.circular = circular;
  std::vector<std::vector<cplx>> corr(k * k);
  std::size_t bars_len = 0;
  for (int e = 0; e < k * k; ++e) {
    if (circular) {
      if (nq != np) {
        throw std::invalid_argument("ki_exact_discrete: periodic grids differ in size");
      }
      corr[e] = circular_correlation(qm, seq[e]);
    } else {
      // pad the response with zeros so negative shifts are covered too
      std::vector<cplx> padded(np + 2 * (nq - 1), cplx(0, 0));
      std::copy(seq[e].begin(), seq[e].end(), padded.begin() + (nq - 1));
      corr[e] = linear_correlation(qm, padded);
    }
    bars_len = corr[e].size();
  }
  out.bars.resize(bars_len, Mat::Zero(k, k));
  for (std::size_t y = 0; y < bars_len; ++y) {
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) out.bars[y](p, q) = corr[p * k + q][y];
    }
  }
  return out;
}

double top_eigenvalue(const Mat& m) {
  if (m.rows() == 1) return m(0, 0).real();
  HermEig eig = herm_eig(m);
  return eig.values[eig.values.size() - 1];
}

// Refine the scanned supremum around the best node. The response is only
// sampled at grid nodes, so the peak between nodes is estimated from the
// parabola through the best node and its neighbours (the smooth-response
// model behind a golden-section refinement); this removes the O(step^2)
// scan bias. Overshoot only lowers K_I, which weakens the floors.
double refine_supremum(const CorrelatedResponse& resp, std::size_t best) {
  const long n = static_cast<long>(resp.bars.size());
  auto value_at = [&](long i) {
    if (resp.circular) {
      i = ((i % n) + n) % n;
    } else if (i < 0 || i >= n) {
      return 0.0;
    }
    return top_eigenvalue(resp.bars[i]);
  };
  const double f0 = value_at(static_cast<long>(best));
  const double fm = value_at(static_cast<long>(best) - 1);
  const double fp = value_at(static_cast<long>(best) + 1);
  const double curvature = 2 * f0 - fm - fp;
  if (curvature <= 0) return f0;
  const double vertex = f0 + (fp - fm) * (fp - fm) / (8.0 * curvature);
  return std::max(f0, vertex);
}

KiEstimate ki_supremum(const GriddedDistribution& prior, const Povm& povm, const Generator& gen,
                       bool surrogate) {
  if (povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("ki supremum: POVM must be parameter-valued (grid density)");
  }
  if (!prior.grid().same_step(povm.grid())) {
    throw std::invalid_argument("ki supremum: prior and POVM grids have different steps");
  }
  if (povm.dim() != gen.dim()) {
    throw std::invalid_argument("ki supremum: dimension mismatch");
  }
  double sup = 0.0;
  int best_level = -1;
  std::size_t best_node = 0;
  std::vector<CorrelatedResponse> responses;
  responses.reserve(gen.level_count());
  for (int i = 0; i < gen.level_count(); ++i) {
    responses.push_back(correlate_eigenspace(prior, povm, gen.eigenspace_basis(i)));
    const CorrelatedResponse& resp = responses.back();
    for (std::size_t y = 0; y < resp.bars.size(); ++y) {
      const double v = top_eigenvalue(resp.bars[y]);
      if (v > sup) {
        sup = v;
        best_level = i;
        best_node = y;
      }
    }
  }
  if (!(sup > 0) || best_level < 0) throw std::runtime_error("ki supremum: degenerate supremum");
  sup = std::max(sup, refine_supremum(responses[best_level], best_node));

  KiEstimate out;
  out.value = 1.0 / sup;
  out.method = KiEstimate::Method::ExactSupremum;
  out.grid_step = povm.grid().step;
  out.refined = true;
  out.approximate = surrogate;
  if (surrogate) {
    // delta-normalized kets carry a 1/spacing relative to the unit
    // surrogate eigenvectors
    const double dg = gen.surrogate_spacing().value_or(
        (gen.raw_eigenvalues()[gen.dim() - 1] - gen.raw_eigenvalues()[0]) /
        std::max(1, gen.dim() - 1));
    out.value *= dg;
  }
  return out;
}

}  // namespace

KiEstimate ki_exact_discrete(const GriddedDistribution& prior, const Povm& povm,
                             const Generator& gen) {
  if (gen.kind() != SpectrumKind::Discrete) {
    throw std::invalid_argument("ki_exact_discrete: generator must be discrete");
  }
  return ki_supremum(prior, povm, gen, /*surrogate=*/false);
}

KiEstimate ki_continuous_surrogate(const GriddedDistribution& prior, const Povm& povm,
                                   const Generator& gen) {
  if (gen.kind() != SpectrumKind::ContinuousSurrogate) {
    throw std::invalid_argument("ki_continuous_surrogate: generator must be a surrogate");
  }
  return ki_supremum(prior, povm, gen, /*surrogate=*/true);
}

KiEstimate ki_covariant_continuous() {
  KiEstimate out;
  out.value = std::numbers::pi * std::numbers::e;
  out.method = KiEstimate::Method::CovariantContinuous;
  return out;
}

KiEstimate ki_covariant_phase() {
  KiEstimate out;
  out.value = 2 * std::numbers::pi;
  out.method = KiEstimate::Method::CovariantPhase;
  return out;
}

KiEstimate ki_from_qmax(const GriddedDistribution& prior) {
  KiEstimate out;
  out.value = 1.0 / prior.max_density();
  out.method = KiEstimate::Method::QmaxLower;
  out.grid_step = prior.grid().step;
  return out;
}

KiEstimate ki_ignorance(const GriddedDistribution& prior) {
  double c = 0.0;
  for (int i = 0; i < prior.size(); ++i) {
    const double q = prior.density(i);
    c += q * q * prior.grid().step;
  }
  KiEstimate out;
  out.value = 1.0 / c;
  out.method = KiEstimate::Method::IgnoranceLower;
  out.grid_step = prior.grid().step;
  return out;
}

double error_entropy_floor(const KiEstimate& ki, double h_g) {
  if (!(ki.value > 0)) throw std::invalid_argument("error_entropy_floor: K_I <= 0");
  return std::log(ki.value) - h_g;
}

double rms_floor_from_entropy(const KiEstimate& ki, double h_g) {
  if (!(ki.value > 0)) throw std::invalid_argument("rms_floor_from_entropy: K_I <= 0");
  return ki.value * consts::inv_sqrt_2pi_e() * std::exp(-h_g);
}

double ensemble_length_floor(const KiEstimate& ki, double h_g) {
  if (!(ki.value > 0)) throw std::invalid_argument("ensemble_length_floor: K_I <= 0");
  return ki.value * std::exp(-h_g);
}

double generic_bound(const KiEstimate& ki, double madev, std::optional<double> gap,
                     SpectrumKind kind, bool use_gmin) {
  const double f = use_gmin ? 1.0 : 2.0;
  double c, delta;
  if (kind == SpectrumKind::Discrete) {
    if (!gap.has_value() || !(*gap > 0)) {
      throw std::invalid_argument("generic_bound: discrete spectrum requires a positive gap");
    }
    c = 1.0;
    delta = *gap;
  } else {
    c = 0.0;
    delta = 1.0;
  }
  const double denom = c + f * madev / delta;
  if (!(denom > 0)) throw std::invalid_argument("generic_bound: vanishing denominator");
  return consts::inv_sqrt_2pi_e3() * ki.value / denom;
}

double relative_resolution_bound(int m, double madev_single, double gap, bool use_gmin) {
  if (m < 1) throw std::invalid_argument("relative_resolution_bound: m < 1");
  if (!(gap > 0)) throw std::invalid_argument("relative_resolution_bound: gap <= 0");
  const double f = use_gmin ? 1.0 : 2.0;
  return consts::inv_sqrt_2pi_e3() / (1.0 + f * m * madev_single / gap);
}

double covariant_bound(int m, double madev_single, bool use_gmin) {
  if (m < 1) throw std::invalid_argument("covariant_bound: m < 1");
  const double f = use_gmin ? 1.0 : 2.0;
  return consts::sqrt_pi_over_2e() / (f * m * madev_single);
}

BoundEntry conjectured_relative_bound_continuous(double interval_length, double madev,
                                                 bool use_gmin) {
  const double f = use_gmin ? 1.0 : 2.0;
  BoundEntry e;
  e.tag = "con";
  e.value = consts::sqrt_pi_over_2e() / (f * interval_length * madev);
  e.assumptions = "uniform prior of length L; continuous spectrum";
  e.conjecture = true;
  e.axis = CompareAxis::Relative;
  return e;
}

MzBounds mz_bounds(int n_max, const KiEstimate& ki, int m) {
  if (n_max < 1) throw std::invalid_argument("mz_bounds: n_max < 1");
  if (m < 1) throw std::invalid_argument("mz_bounds: m < 1");
  MzBounds out;
  out.absolute = consts::inv_sqrt_2pi_e() * ki.value / (2.0 * n_max + 1.0);
  out.relative = consts::inv_sqrt_2pi_e() / (2.0 * m * n_max + 1.0);
  return out;
}

BoundReport time_bounds(double e_mean, double e0, double gap_e, double q_max, double tau, int m,
                        std::optional<int> d_levels) {
  if (m < 1) throw std::invalid_argument("time_bounds: m < 1");
  const double dev = e_mean - e0;
  BoundReport report;
  if (gap_e > 0) {
    report.add({"time", (1.0 / q_max) * consts::inv_sqrt_2pi_e3() / (1.0 + dev / gap_e),
                "g = epsilon_0, factor 2 dropped; K_I >= 1/q_max", false, true, "",
                CompareAxis::DeltaX});
    report.add({"timem", consts::inv_sqrt_2pi_e3() / (1.0 + m * dev / gap_e),
                "uniform prior of length tau; m copies; g = epsilon_0", false, true, "",
                CompareAxis::Relative});
  } else {
    report.add({"time", 0.0, "", false, false, "requires a positive energy gap",
                CompareAxis::DeltaX});
    report.add({"timem", 0.0, "", false, false, "requires a positive energy gap",
                CompareAxis::Relative});
  }
  if (d_levels.has_value()) {
    if (*d_levels < 1) throw std::invalid_argument("time_bounds: D < 1");
    report.add({"d", consts::inv_sqrt_2pi_e() / (static_cast<double>(m) * *d_levels),
                "probe confined to D energy levels; uniform prior", false, true, "",
                CompareAxis::Relative});
  }
  (void)tau;
  return report;
}

std::optional<double> tsang_bound(double tau, double e_dev) {
  const double u = tau * e_dev;
  if (u < 0.690) return std::nullopt;
  return (0.154 / u) * std::sqrt(1.0 - 0.329 / u);
}

double noisy_additive_bound(double base, double h_z) {
  if (base < 0) throw std::invalid_argument("noisy_additive_bound: base < 0");
  const double noise_rms = std::exp(h_z) * consts::inv_sqrt_2pi_e();
  return std::sqrt(base * base + noise_rms * noise_rms);
}

BoundReport noisy_rank1_bounds(const Generator& gen, const KiEstimate& ki, double madev_noisy,
                               double s_noisy, bool use_gmin) {
  if (!gen.rank1_levels()) {
    throw std::invalid_argument("noisy_rank1_bounds: generator has degenerate eigenprojectors");
  }
  const double boost = std::exp(s_noisy);
  const double f = use_gmin ? 1.0 : 2.0;
  BoundReport report;
  if (gen.kind() == SpectrumKind::Discrete) {
    const double gap = gen.min_gap().value_or(0.0);
    if (!(gap > 0)) throw std::invalid_argument("noisy_rank1_bounds: missing spectral gap");
    const double denom = 1.0 + f * madev_noisy / gap;
    report.add({"gen1", consts::inv_sqrt_2pi_e3() * ki.value * boost / denom,
                "rank-1 discrete generator; noisy-probe average; m = 1", false, true, "",
                CompareAxis::DeltaX});
    report.add({"gendis1", consts::inv_sqrt_2pi_e3() * boost / denom,
                "uniform prior; rank-1 discrete generator; m = 1", false, true, "",
                CompareAxis::Relative});
    report.add({"cov1", 0.0, "", false, false, "continuous spectrum required",
                CompareAxis::DeltaX});
  } else {
    report.add({"gen1", 0.0, "", false, false, "discrete spectrum required",
                CompareAxis::DeltaX});
    report.add({"gendis1", 0.0, "", false, false, "discrete spectrum required",
                CompareAxis::Relative});
    report.add({"cov1", consts::sqrt_2pi_over_e3() * boost / (f * madev_noisy),
                "covariant estimate; rank-1 continuous generator; m = 1", false, true, "",
                CompareAxis::DeltaX});
  }
  return report;
}

GaussianNoiseEntropyFloor gaussian_noise_entropy_floor(double n_lambda) {
  if (n_lambda < 0) throw std::invalid_argument("gaussian_noise_entropy_floor: n_lambda < 0");
  GaussianNoiseEntropyFloor out;
  out.weak = std::log1p(n_lambda);
  out.strong = n_lambda > 0 ? std::log1p(n_lambda) + n_lambda * std::log1p(1.0 / n_lambda) : 0.0;
  return out;
}

double noisy_phase_relative_bound(double n_mean, double n_lambda) {
  if (n_mean < 0) throw std::invalid_argument("noisy_phase_relative_bound: n_mean < 0");
  if (n_lambda < 0) throw std::invalid_argument("noisy_phase_relative_bound: n_lambda < 0");
  return consts::inv_sqrt_2pi_e3() / (1.0 + n_mean / (n_lambda + 1.0));
}

double mutual_info_cap(double relative_floor) {
  if (!(relative_floor > 0) || relative_floor > 1.0) {
    throw std::invalid_argument("mutual_info_cap: relative floor must be in (0, 1]");
  }
  return std::log2(1.0 / relative_floor);
}

BaselineBounds baseline_bounds(double var_g, int m, double fisher_q) {
  if (!(var_g > 0)) throw std::invalid_argument("baseline_bounds: Var G <= 0");
  if (m < 1) throw std::invalid_argument("baseline_bounds: m < 1");
  if (fisher_q < 0) throw std::invalid_argument("baseline_bounds: negative Fisher information");
  BaselineBounds out;
  out.cramer_rao = 1.0 / (2.0 * std::sqrt(static_cast<double>(m) * var_g));
  out.van_trees = 1.0 / (2.0 * std::sqrt(static_cast<double>(m) * (var_g + fisher_q)));
  return out;
}

}  // namespace shiftbound
