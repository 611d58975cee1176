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

#include "shiftbound/scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shiftbound/fftutil.hpp"

namespace shiftbound {

namespace {
constexpr double kDefectError = 1e-4;

bool grids_aligned(const UniformGrid& a, const UniformGrid& b) {
  const double off = (a.start - b.start) / b.step;
  return std::abs(off - std::lround(off)) < 1e-6;
}
}  // namespace

void validate(const Scenario& s) {
  if (s.probe.dim() != s.gen.dim() || s.povm.dim() != s.gen.dim()) {
    throw std::invalid_argument("Scenario: dimension mismatch");
  }
  if (s.copies < 1) throw std::invalid_argument("Scenario: copies < 1");
  if (s.povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("Scenario: estimate POVM must be parameter-valued");
  }
  const UniformGrid& pg = s.prior.grid();
  const UniformGrid& mg = s.povm.grid();
  if (!pg.same_step(mg)) throw std::invalid_argument("Scenario: grid steps differ");
  if (pg.periodic != mg.periodic) {
    throw std::invalid_argument("Scenario: mixed periodic/line grids");
  }
  if (pg.periodic) {
    if (pg.count != mg.count || std::abs(pg.start - mg.start) > 1e-12) {
      throw std::invalid_argument("Scenario: periodic grids must coincide");
    }
  } else {
    if (!grids_aligned(pg, mg)) throw std::invalid_argument("Scenario: grid lattices misaligned");
    if (pg.start < mg.start - 1e-9 || pg.end() > mg.end() + 1e-9) {
      throw std::invalid_argument("Scenario: prior support outside POVM range");
    }
  }
}

Mat averaged_povm(const Scenario& s, double y) {
  validate(s);
  const UniformGrid& mg = s.povm.grid();
  const long r = std::lround(y / mg.step);
  const int nq = s.prior.size();
  const int np = s.povm.size();
  const long offset0 = std::lround((s.prior.grid().start - mg.start) / mg.step);
  Mat out = Mat::Zero(s.gen.dim(), s.gen.dim());
  for (int j = 0; j < nq; ++j) {
    long u = offset0 + j + r;
    if (mg.periodic) {
      u = ((u % np) + np) % np;
    } else if (u < 0 || u >= np) {
      continue;
    }
    // e^{iGx} M_{x+y} e^{-iGx}
    Mat conj_u = shift_unitary(s.gen, -s.prior.grid().node(j));
    out += s.prior.mass(j) * (conj_u * s.povm.op(static_cast<int>(u)) * conj_u.adjoint());
  }
  out = hermitize(out);
  if (min_eigenvalue(out) < -1e-9) {
    throw std::runtime_error("averaged_povm: lost positivity");
  }
  return out;
}

ErrorLaw error_distribution(const Scenario& s) {
  validate(s);
  const int d = s.gen.dim();
  const Mat& v = s.gen.eigenvectors();
  const RVec& lam = s.gen.raw_eigenvalues();
  const UniformGrid& pg = s.prior.grid();
  const UniformGrid& mg = s.povm.grid();
  const int np = s.povm.size();
  const int nq = s.prior.size();
  const bool circular = mg.periodic;

  Mat rho_t = v.adjoint() * s.probe.matrix() * v;

  // transformed POVM sequences per node
  std::vector<Mat> mt(np);
  for (int u = 0; u < np; ++u) mt[u] = v.adjoint() * s.povm.op(u) * v;

  const int out_len = circular ? np : np + nq - 1;
  std::vector<double> mass(out_len, 0.0);

  std::vector<cplx> a(nq), b;
  for (int p = 0; p < d; ++p) {
    for (int q = p; q < d; ++q) {
      const cplx w = rho_t(p, q);
      if (std::abs(w) < 1e-16) continue;
      const double delta = lam[p] - lam[q];
      for (int j = 0; j < nq; ++j) {
        a[j] = s.prior.mass(j) * std::exp(cplx(0, -delta * pg.node(j)));
      }
      std::vector<cplx> corr;
      if (circular) {
        b.resize(np);
        for (int u = 0; u < np; ++u) b[u] = mt[u](q, p);
        corr = circular_correlation(a, b);
      } else {
        b.assign(np + 2 * (nq - 1), cplx(0, 0));
        for (int u = 0; u < np; ++u) b[u + nq - 1] = mt[u](q, p);
        corr = linear_correlation(a, b);
      }
      const double scale = (p == q) ? 1.0 : 2.0;  // Hermitian pairing
      for (int r = 0; r < out_len; ++r) {
        mass[r] += scale * (w * corr[r]).real() * mg.step;
      }
    }
  }

  // assemble the output grid with y = 0 centered
  UniformGrid out_grid;
  RVec out_mass(out_len);
  if (circular) {
    const int half = np / 2;
    out_grid = UniformGrid{-half * mg.step, mg.step, np, true};
    for (int i = 0; i < np; ++i) out_mass[i] = mass[((i - half) % np + np) % np];
  } else {
    const double y0 = -(nq - 1) * mg.step + (mg.start - pg.start);
    out_grid = UniformGrid{y0, mg.step, out_len, false};
    for (int i = 0; i < out_len; ++i) out_mass[i] = mass[i];
  }

  double total = 0.0;
  for (int i = 0; i < out_len; ++i) {
    if (out_mass[i] < 0 && out_mass[i] > -1e-11) out_mass[i] = 0.0;
    total += out_mass[i];
  }
  if (std::abs(total - 1.0) > kDefectError) {
    throw std::runtime_error("error_distribution: normalization defect " +
                             std::to_string(std::abs(total - 1.0)));
  }
  GriddedDistribution law(out_grid, std::move(out_mass), /*renormalize=*/true);
  return ErrorLaw{std::move(law), total};
}

GriddedDistribution eigenstate_response(const Povm& povm, const Generator& gen, int which) {
  if (gen.kind() != SpectrumKind::Discrete) {
    throw std::invalid_argument("eigenstate_response: discrete generator required");
  }
  if (which < 0 || which >= gen.level_count()) {
    throw std::out_of_range("eigenstate_response: level index out of range");
  }
  if (povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("eigenstate_response: grid POVM required");
  }
  Mat basis = gen.eigenspace_basis(which);
  Vec psi;
  if (basis.cols() == 1) {
    psi = basis.col(0);
  } else {
    // compressed-response maximizer over the eigenspace
    double best = -1.0;
    Vec best_w;
    for (int u = 0; u < povm.size(); ++u) {
      Mat c = basis.adjoint() * povm.op(u) * basis;
      HermEig eig = herm_eig(c);
      const double top = eig.values[eig.values.size() - 1];
      if (top > best) {
        best = top;
        best_w = eig.vectors.col(eig.values.size() - 1);
      }
    }
    psi = basis * best_w;
  }
  RVec masses(povm.size());
  for (int u = 0; u < povm.size(); ++u) {
    masses[u] = std::max(0.0, (psi.adjoint() * povm.op(u) * psi)(0, 0).real() *
                                  povm.grid().step);
  }
  return GriddedDistribution(povm.grid(), std::move(masses), /*renormalize=*/true);
}

bool exploits_prior_necessary_condition(const Povm& povm, const Generator& gen, double tol) {
  GriddedDistribution uniform = GriddedDistribution::uniform(povm.grid());
  for (int i = 0; i < gen.level_count(); ++i) {
    if (total_variation(eigenstate_response(povm, gen, i), uniform) > tol) return true;
  }
  return false;
}

bool is_covariant(const Povm& povm, const Generator& gen, double tol, int sample_shifts) {
  if (povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("is_covariant: grid POVM required");
  }
  const UniformGrid& g = povm.grid();
  const int n = povm.size();
  const int shifts = std::min(sample_shifts, n - 1);
  for (int k = 1; k <= shifts; ++k) {
    const int r = std::max(1, (k * (n - 1)) / std::max(1, shifts));
    const double y = r * g.step;
    Mat u = shift_unitary(gen, y);
    for (int x = 0; x < n; ++x) {
      int xr = x + r;
      if (g.periodic) {
        xr %= n;
      } else if (xr >= n) {
        continue;
      }
      if (max_abs(povm.op(xr) - u * povm.op(x) * u.adjoint()) > tol) return false;
    }
  }
  return true;
}

Scenario m_copy_scenario(const Scenario& s, int m, Povm joint_povm) {
  if (m < 1) throw std::invalid_argument("m_copy_scenario: m < 1");
  double total_dim = 1;
  for (int i = 0; i < m; ++i) {
    total_dim *= s.gen.dim();
    if (total_dim > 4096) throw std::invalid_argument("m_copy_scenario: dim^m exceeds 4096");
  }
  if (m == 1) return s;
  DensityOperator probe = s.probe;
  Generator gen = s.gen;
  for (int i = 1; i < m; ++i) {
    probe = tensor_product(probe, s.probe);
    gen = tensor_sum(gen, s.gen);
  }
  return Scenario{std::move(probe), std::move(gen), s.prior, std::move(joint_povm), 1};
}

double shift_invariant_joint_estimate(const std::vector<double>& samples,
                                      const std::vector<double>& weights,
                                      std::optional<double> period) {
  if (samples.size() != weights.size() || samples.empty()) {
    throw std::invalid_argument("shift_invariant_joint_estimate: size mismatch");
  }
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  if (std::abs(wsum - 1.0) > 1e-12) {
    throw std::invalid_argument("shift_invariant_joint_estimate: weights not normalized");
  }
  if (!period) {
    double est = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) est += weights[i] * samples[i];
    return est;
  }
  const double p = *period;
  // branch cut guarded by a relative epsilon so antipodal samples resolve
  // the same way before and after a common shift
  auto wrap_centered = [p](double y) {
    const double guard = 1e-9 * p;
    double r = std::fmod(y, p);
    if (r <= -p / 2 + guard) r += p;
    if (r > p / 2 + guard) r -= p;
    return r;
  };
  // unwrap relative to the first sample, average, re-wrap into [0, p)
  double est = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    est += weights[i] * (samples[0] + wrap_centered(samples[i] - samples[0]));
  }
  est = std::fmod(est, p);
  if (est < 0) est += p;
  return est;
}

bool joint_estimator_covariance_check(
    const Povm& povm, const Generator& gen, const std::vector<double>& weights, double tol,
    std::optional<std::function<double(double, double)>> estimator) {
  if (povm.kind() != Povm::Kind::GridDensity || !povm.periodic()) {
    throw std::invalid_argument("joint_estimator_covariance_check: periodic grid POVM required");
  }
  if (gen.dim() > 4) {
    throw std::invalid_argument("joint_estimator_covariance_check: dim > 4");
  }
  const UniformGrid& g = povm.grid();
  const int n = povm.size();
  const double p = g.period();
  auto f = estimator.value_or([&](double x1, double x2) {
    return shift_invariant_joint_estimate({x1, x2}, weights, p);
  });

  const int d2 = gen.dim() * gen.dim();
  std::vector<Mat> joint(n, Mat::Zero(d2, d2));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double est = std::fmod(f(g.node(i), g.node(j)), p);
      if (est < 0) est += p;
      const double u = (est - g.start) / g.step;
      // bin edges between nodes; exact half-integer ties go to the lower bin
      long k = static_cast<long>(std::ceil(u - 0.5 - 1e-9));
      k = ((k % n) + n) % n;
      joint[k] += kron(povm.op(i), povm.op(j));
    }
  }

  double scale = 0.0;
  for (const Mat& m : joint) scale = std::max(scale, max_abs(m));
  if (scale == 0.0) return false;

  Generator gt = tensor_sum(gen, gen);
  for (int sh = 1; sh <= 4; ++sh) {
    const int r = std::max(1, (sh * (n - 1)) / 4);
    Mat u = shift_unitary(gt, r * g.step);
    for (int k = 0; k < n; ++k) {
      const Mat lhs = joint[(k + r) % n];
      const Mat rhs = u * joint[k] * u.adjoint();
      if (max_abs(lhs - rhs) > tol * scale) return false;
    }
  }
  return true;
}

double prior_support_length(const GriddedDistribution& prior) {
  int nonzero = 0;
  for (int i = 0; i < prior.size(); ++i) {
    if (prior.mass(i) > 0) ++nonzero;
  }
  return nonzero * prior.grid().step;
}

bool is_uniform_prior(const GriddedDistribution& prior) {
  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < prior.size(); ++i) {
    const double m = prior.mass(i);
    if (m <= 0) continue;
    mx = std::max(mx, m);
    mn = std::min(mn, m);
  }
  return mx > 0 && (mx - mn) <= 1e-9 * mx;
}

namespace {

bool integer_spaced_levels(const Generator& gen) {
  for (int i = 0; i < gen.level_count(); ++i) {
    const double l = gen.level(i) - gen.level(0);
    if (std::abs(l - std::lround(l)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

AssembledBounds assemble_bound_report(const BoundInputs& in, const RunOptions& options) {
  AssembledBounds out;
  const bool discrete = in.gen.kind() == SpectrumKind::Discrete;
  out.h_g = generator_entropy(in.gen, in.probe);
  const double interval =
      options.interval_length.value_or(prior_support_length(in.prior));

  BoundReport& rep = out.report;
  KiEstimate ki_q = ki_from_qmax(in.prior);
  rep.add({"qmax", ki_q.value, "K_I >= 1/q_max", false, true, "", CompareAxis::None});
  KiEstimate ki_h = ki_ignorance(in.prior);
  rep.add({"honest", ki_h.value, "K_I for ignorance-respecting estimates", false, true, "",
           CompareAxis::None});

  std::string ki_note;
  if (in.povm != nullptr) {
    out.ki = discrete ? ki_exact_discrete(in.prior, *in.povm, in.gen)
                      : ki_continuous_surrogate(in.prior, *in.povm, in.gen);
    ki_note = out.ki.approximate ? "surrogate-grid supremum (approximate)" : "exact supremum";
  } else {
    out.ki = ki_q;
    ki_note = "no measurement supplied; K_I from 1/q_max";
  }
  rep.add({"kinverse", out.ki.value, ki_note, false, true, "", CompareAxis::None});

  rep.add({"hbound", error_entropy_floor(out.ki, out.h_g), "error-entropy floor", false, true,
           "", CompareAxis::EntropyY});
  rep.add({"xbound", rms_floor_from_entropy(out.ki, out.h_g), "Gaussian maximum-entropy step",
           false, true, "", CompareAxis::DeltaX});
  rep.add({"ensemble", ensemble_length_floor(out.ki, out.h_g), "ensemble-length floor", false,
           true, "", CompareAxis::EnsembleLength});

  // generic Heisenberg-style floor; strongest admissible reference eigenvalue
  const bool use_gmin = in.gen.bounded_below();
  const double g_ref =
      use_gmin ? *in.gen.lower_bound() : generator_median(in.gen, in.probe);
  const double madev = generator_mean_abs_dev(in.gen, in.probe, g_ref);
  const std::string ref_note =
      use_gmin ? "g = g_min, factor 2 dropped" : "g = median eigenvalue, factor 2";

  if (discrete) {
    const double gap = in.gen.min_gap().value_or(0.0);
    if (gap > 0) {
      rep.add({"gen", generic_bound(out.ki, madev, gap, SpectrumKind::Discrete, use_gmin),
               ref_note, false, true, "", CompareAxis::DeltaX});
      const bool uniform = is_uniform_prior(in.prior);
      rep.add({"gendis", relative_resolution_bound(in.copies, madev, gap, use_gmin),
               ref_note + "; uniform prior; m = " + std::to_string(in.copies),
               false, uniform, uniform ? "" : "requires a uniform prior",
               CompareAxis::Relative});
      if (integer_spaced_levels(in.gen) && in.prior.periodic()) {
        rep.add({"phasegen", generic_bound(out.ki, madev, gap, SpectrumKind::Discrete, use_gmin),
                 ref_note + "; integer spectrum, phase parameter", false, true, "",
                 CompareAxis::DeltaX});
        rep.add({"phasem", relative_resolution_bound(in.copies, madev, gap, use_gmin),
                 ref_note + "; uniform prior; m = " + std::to_string(in.copies), false, uniform,
                 uniform ? "" : "requires a uniform prior", CompareAxis::Relative});
      }
    } else {
      rep.add({"gen", 0.0, "", false, false, "minimum gap undefined (single level)",
               CompareAxis::DeltaX});
    }
  } else {
    rep.add({"gen", generic_bound(out.ki, madev, std::nullopt, SpectrumKind::ContinuousSurrogate,
                                  use_gmin),
             ref_note + "; continuous surrogate K_I (approximate)", false, true, "",
             CompareAxis::DeltaX});
    rep.add({"cov", covariant_bound(in.copies, madev, use_gmin),
             ref_note + "; covariant estimates only; reported", false, true, "",
             CompareAxis::None});
    rep.add(conjectured_relative_bound_continuous(interval, madev, use_gmin));
  }

  if (options.noise) {
    const NoiseContext& nc = *options.noise;
    if (discrete && use_gmin && integer_spaced_levels(in.gen)) {
      const double floor = noisy_phase_relative_bound(nc.pre_noise_n_mean, nc.n_lambda);
      rep.add({"phasen", floor, "Gaussian noise channel; uniform prior; m = 1", false, true, "",
               CompareAxis::Relative});
      rep.add({"mi_cap", mutual_info_cap(floor),
               "approximate capacity cap in bits; reported only", false, true, "",
               CompareAxis::None});
    }
    if (discrete && in.gen.rank1_levels()) {
      const double s_noisy = von_neumann_entropy(in.probe);
      BoundReport noisy = noisy_rank1_bounds(in.gen, out.ki, madev, s_noisy, use_gmin);
      for (BoundEntry& e : noisy.entries) rep.add(e);
    }
  }

  if (options.include_baselines) {
    RVec p = level_distribution(in.gen, in.probe);
    double mean = 0.0, second = 0.0;
    for (int i = 0; i < p.size(); ++i) {
      mean += p[i] * in.gen.level(i);
      second += p[i] * in.gen.level(i) * in.gen.level(i);
    }
    const double var_g = std::max(second - mean * mean, 0.0);
    if (var_g > 0) {
      BaselineBounds base = baseline_bounds(var_g, in.copies, fisher_information(in.prior));
      rep.add({"cr", base.cramer_rao, "unbiased-estimate baseline; reported only", false, true,
               "", CompareAxis::None});
      rep.add({"vantrees", base.van_trees, "prior-averaged baseline; reported only", false,
               true, "", CompareAxis::None});
    }
  }
  return out;
}

RunResult run_scenario(const Scenario& s, const RunOptions& options) {
  validate(s);
  RunResult out{error_distribution(s), {}, {}, 0.0, {}};

  out.achieved.delta_x = rms_deviation(out.error.law, 0.0);
  out.achieved.h_y = differential_entropy(out.error.law);
  const double interval =
      options.interval_length.value_or(prior_support_length(s.prior));
  out.achieved.relative = out.achieved.delta_x / interval;

  AssembledBounds assembled = assemble_bound_report(
      BoundInputs{s.probe, s.gen, s.prior, &s.povm, s.copies}, options);
  out.report = std::move(assembled.report);
  out.ki = assembled.ki;
  out.h_g = assembled.h_g;
  out.report.achieved = out.achieved;
  return out;
}

std::vector<std::string> violated_floors(const BoundReport& report, const Achieved& achieved,
                                         double tol) {
  std::vector<std::string> bad;
  for (const BoundEntry& e : report.entries) {
    if (!e.gating()) continue;
    bool violated = false;
    switch (e.axis) {
      case CompareAxis::DeltaX:
        violated = e.value > achieved.delta_x + tol;
        break;
      case CompareAxis::EntropyY:
        violated = e.value > achieved.h_y + tol;
        break;
      case CompareAxis::Relative:
        violated = e.value > achieved.relative + tol;
        break;
      case CompareAxis::EnsembleLength:
        violated = e.value > std::exp(achieved.h_y + tol);
        break;
      case CompareAxis::None:
        break;
    }
    if (violated) bad.push_back(e.tag);
  }
  return bad;
}

}  // namespace shiftbound
