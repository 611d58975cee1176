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

#include "shiftbound/ur.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shiftbound/fftutil.hpp"

namespace shiftbound {

namespace {
const double kLn2Pi = std::log(2.0 * std::numbers::pi);
const double kLnPiE = std::log(std::numbers::pi * std::numbers::e);
}  // namespace

std::string digest_bytes(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string digest_state(const DensityOperator& state) {
  return digest_bytes(state.matrix().data(), sizeof(cplx) * state.dim() * state.dim());
}

double overlap_norm(const Povm& a, const Povm& b) {
  if (a.kind() != Povm::Kind::FiniteIndexed || b.kind() != Povm::Kind::FiniteIndexed) {
    throw std::invalid_argument("overlap_norm: finite POVMs required");
  }
  if (a.dim() != b.dim()) throw std::invalid_argument("overlap_norm: dimension mismatch");
  std::vector<Mat> roots_b;
  roots_b.reserve(b.size());
  for (int k = 0; k < b.size(); ++k) roots_b.push_back(psd_sqrt(b.op(k)));
  double best = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    Mat root_a = psd_sqrt(a.op(j));
    for (int k = 0; k < b.size(); ++k) {
      best = std::max(best, op_norm(root_a * roots_b[k]));
    }
  }
  return best;
}

UrCheckResult check_eur_discrete(const DensityOperator& state, const Povm& a, const Povm& b) {
  UrCheckResult out;
  out.lhs = shannon_entropy(a.outcome_probs(state)) + shannon_entropy(b.outcome_probs(state));
  out.rhs = -2.0 * std::log(overlap_norm(a, b));
  out.relation = "eur-discrete";
  out.inputs_digest = digest_state(state);
  return out;
}

UrCheckResult check_eur_rank1(const DensityOperator& state, const Povm& a, const Povm& b) {
  for (int j = 0; j < a.size(); ++j) {
    HermEig eig = herm_eig(a.op(j));
    const int n = static_cast<int>(eig.values.size());
    if (n >= 2 && eig.values[n - 2] > 1e-10 * std::max(1.0, eig.values[n - 1])) {
      throw std::invalid_argument("check_eur_rank1: element " + std::to_string(j) +
                                  " is not rank 1");
    }
  }
  UrCheckResult out;
  const double c = overlap_norm(a, b);
  out.lhs = shannon_entropy(a.outcome_probs(state)) + shannon_entropy(b.outcome_probs(state));
  out.rhs = -std::log(c * c) + von_neumann_entropy(state);
  out.relation = "eur-rank1";
  out.inputs_digest = digest_state(state);
  return out;
}

UrCheckResult check_number_phase(const DensityOperator& state, const UniformGrid& grid,
                                 bool with_state_entropy) {
  Povm phase = canonical_phase_povm(state.dim(), grid);
  RVec number_probs(state.dim());
  for (int n = 0; n < state.dim(); ++n) {
    number_probs[n] = std::max(0.0, state.matrix()(n, n).real());
  }
  RVec phase_masses = grid_masses(phase, state);
  GriddedDistribution phi(grid, phase_masses, /*renormalize=*/true);
  UrCheckResult out;
  out.lhs = shannon_entropy(number_probs) + differential_entropy(phi);
  out.rhs = kLn2Pi + (with_state_entropy ? von_neumann_entropy(state) : 0.0);
  out.relation = with_state_entropy ? "number-phase-rank1" : "number-phase";
  out.inputs_digest = digest_state(state);
  return out;
}

namespace {

struct QpLaws {
  RVec q_masses;
  RVec p_masses;
  double dp;
};

void check_aliasing(const RVec& p_masses) {
  const int n = static_cast<int>(p_masses.size());
  const int edge = std::max(1, n / 10);
  double tail = 0.0;
  for (int i = 0; i < edge; ++i) tail += p_masses[i] + p_masses[n - 1 - i];
  if (tail > 1e-8) {
    throw std::runtime_error("check_qp_discretized: momentum tail mass " + std::to_string(tail) +
                             " signals aliasing");
  }
}

QpLaws qp_laws_pure(const Vec& psi_in, const UniformGrid& grid) {
  const int n = grid.count;
  const double h = grid.step;
  Vec psi = psi_in;
  double norm = std::sqrt(psi.squaredNorm() * h);
  if (norm <= 0) throw std::invalid_argument("check_qp_discretized: zero state");
  psi /= norm;

  QpLaws out;
  out.dp = 2.0 * std::numbers::pi / (n * h);
  out.q_masses.resize(n);
  for (int j = 0; j < n; ++j) out.q_masses[j] = std::norm(psi[j]) * h;

  // centered momentum grid via DFT with an alternating-sign shift
  std::vector<cplx> f(n);
  for (int j = 0; j < n; ++j) f[j] = psi[j] * ((j % 2 == 0) ? 1.0 : -1.0);
  std::vector<cplx> big_f = dft(f);
  out.p_masses.resize(n);
  const double factor = h * h / (2.0 * std::numbers::pi) * out.dp;
  for (int k = 0; k < n; ++k) out.p_masses[k] = std::norm(big_f[k]) * factor;
  return out;
}

QpLaws qp_laws_mixed(const Mat& rho, const UniformGrid& grid) {
  const int n = grid.count;
  const double h = grid.step;
  if (rho.rows() != n) throw std::invalid_argument("check_qp_discretized: grid/state mismatch");
  QpLaws out;
  out.dp = 2.0 * std::numbers::pi / (n * h);
  out.q_masses.resize(n);
  for (int j = 0; j < n; ++j) out.q_masses[j] = std::max(0.0, rho(j, j).real());
  Mat w(n, n);
  for (int k = 0; k < n; ++k) {
    const double p = out.dp * (k - n / 2);
    for (int j = 0; j < n; ++j) {
      w(k, j) = std::exp(cplx(0, -p * grid.node(j))) / std::sqrt(double(n));
    }
  }
  Mat rho_p = w * rho * w.adjoint();
  out.p_masses.resize(n);
  for (int k = 0; k < n; ++k) out.p_masses[k] = std::max(0.0, rho_p(k, k).real());
  return out;
}

QpCheckResult qp_result(const QpLaws& laws, const UniformGrid& grid, double s_rho,
                        const std::string& digest) {
  check_aliasing(laws.p_masses);
  QpCheckResult out;
  GriddedDistribution q(grid, laws.q_masses, /*renormalize=*/true);
  UniformGrid pgrid{-(grid.count / 2) * laws.dp, laws.dp, grid.count, false};
  GriddedDistribution p(pgrid, laws.p_masses, /*renormalize=*/true);
  out.h_q = differential_entropy(q);
  out.h_p = differential_entropy(p);
  out.optimal_rhs = kLnPiE;
  out.proven = UrCheckResult{out.h_q + out.h_p, kLn2Pi, "qp-proven", digest};
  out.strong = UrCheckResult{out.h_q + out.h_p - s_rho, kLn2Pi, "qp-rank1", digest};
  return out;
}

}  // namespace

QpCheckResult check_qp_discretized(const Vec& wavefunction, const UniformGrid& grid) {
  if (grid.periodic) throw std::invalid_argument("check_qp_discretized: line grid required");
  if (wavefunction.size() != grid.count) {
    throw std::invalid_argument("check_qp_discretized: grid/state mismatch");
  }
  QpLaws laws = qp_laws_pure(wavefunction, grid);
  return qp_result(laws, grid, 0.0,
                   digest_bytes(wavefunction.data(), sizeof(cplx) * wavefunction.size()));
}

QpCheckResult check_qp_discretized(const Mat& rho_position, const UniformGrid& grid) {
  if (grid.periodic) throw std::invalid_argument("check_qp_discretized: line grid required");
  Mat rho = rho_position / rho_position.trace().real();
  QpLaws laws = qp_laws_mixed(rho, grid);
  const double s = von_neumann_entropy(DensityOperator::from_matrix(hermitize(rho)));
  return qp_result(laws, grid, s, digest_bytes(rho.data(), sizeof(cplx) * rho.size()));
}

BinnedConvergence binned_convergence(const Povm& povm, const DensityOperator& state,
                                     const std::vector<double>& eps_list) {
  if (povm.kind() != Povm::Kind::GridDensity) {
    throw std::invalid_argument("binned_convergence: grid POVM required");
  }
  const UniformGrid& grid = povm.grid();
  RVec base = grid_masses(povm, state);
  const double total = base.sum();
  if (total <= 0) throw std::invalid_argument("binned_convergence: empty law");
  base /= total;

  BinnedConvergence out;
  out.limit = shannon_entropy(base) + std::log(grid.step);
  for (double eps : eps_list) {
    const double ratio = eps / grid.step;
    const long k = std::lround(ratio);
    if (k < 1 || std::abs(ratio - k) > 1e-9 || grid.count % k != 0) {
      throw std::invalid_argument("binned_convergence: eps " + std::to_string(eps) +
                                  " incommensurate with the base grid");
    }
    RVec binned(grid.count / k);
    for (int b = 0; b < binned.size(); ++b) {
      double s = 0.0;
      for (long j = 0; j < k; ++j) s += base[b * k + j];
      binned[b] = s;
    }
    out.sequence.emplace_back(eps, shannon_entropy(binned) + std::log(eps));
  }
  out.monotone_nonincreasing = true;
  for (std::size_t i = 1; i < out.sequence.size(); ++i) {
    if (out.sequence[i].second > out.sequence[i - 1].second + 1e-12) {
      out.monotone_nonincreasing = false;
    }
  }
  return out;
}

UrCheckResult check_covariant_relation(const Generator& gen, const DensityOperator& state,
                                       int conjugate_nodes,
                                       const std::vector<double>& blur_kernel) {
  if (gen.kind() != SpectrumKind::ContinuousSurrogate) {
    throw std::invalid_argument("check_covariant_relation: surrogate generator required");
  }
  if (conjugate_nodes < gen.dim()) {
    throw std::invalid_argument("check_covariant_relation: too few conjugate nodes");
  }
  const double dg = gen.surrogate_spacing().value_or(
      (gen.raw_eigenvalues()[gen.dim() - 1] - gen.raw_eigenvalues()[0]) /
      std::max(1, gen.dim() - 1));

  // H(G), differential convention on the surrogate spectrum
  RVec level_p = level_distribution(gen, state);
  const double h_g = shannon_entropy(level_p) + std::log(dg);

  // conjugate measurement on the period 2 pi / dg
  const double period = 2.0 * std::numbers::pi / dg;
  UniformGrid xgrid = UniformGrid::periodic_interval(period, conjugate_nodes);
  Mat rho_t = gen.eigenvectors().adjoint() * state.matrix() * gen.eigenvectors();
  const int d = gen.dim();
  RVec masses(conjugate_nodes);
  for (int i = 0; i < conjugate_nodes; ++i) {
    const double x = xgrid.node(i);
    Vec e(d);
    for (int j = 0; j < d; ++j) e[j] = std::exp(cplx(0, -gen.raw_eigenvalues()[j] * x));
    const double density = std::max(0.0, (e.adjoint() * rho_t * e)(0, 0).real() / period);
    masses[i] = density * xgrid.step;
  }

  if (!blur_kernel.empty()) {
    RVec blurred = RVec::Zero(conjugate_nodes);
    double ksum = 0.0;
    for (double w : blur_kernel) ksum += w;
    for (int i = 0; i < conjugate_nodes; ++i) {
      for (std::size_t j = 0; j < blur_kernel.size(); ++j) {
        const int shifted = (i + static_cast<int>(j)) % conjugate_nodes;
        blurred[shifted] += masses[i] * blur_kernel[j] / ksum;
      }
    }
    masses = blurred;
  }

  GriddedDistribution m_law(xgrid, masses, /*renormalize=*/true);
  UrCheckResult out;
  out.lhs = h_g + differential_entropy(m_law);
  out.rhs = kLnPiE;
  out.relation = blur_kernel.empty() ? "covariant-conjugate" : "covariant-blurred";
  out.inputs_digest = digest_state(state);
  return out;
}

Rank2SearchOutcome rank2_counterexample_search(int trials, int dim, std::uint64_t seed,
                                               double tol) {
  Rank2SearchOutcome out;
  out.trials = trials;
  out.worst_slack = std::numeric_limits<double>::infinity();
  const int nodes = 64;
  UniformGrid grid = UniformGrid::circle(nodes);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    DensityOperator rho = random_density(rng, dim, dim);

    // rank-1 band-limited X densities
    std::vector<Vec> field(nodes, Vec::Zero(dim));
    const int band = 2;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> coeff;
    for (int k = -band; k <= band; ++k) {
      Vec c(dim);
      for (int i = 0; i < dim; ++i) c[i] = cplx(gauss(rng), gauss(rng));
      coeff.push_back(c);
    }
    Mat total = Mat::Zero(dim, dim);
    for (int x = 0; x < nodes; ++x) {
      Vec v = Vec::Zero(dim);
      for (int k = -band; k <= band; ++k) {
        v += coeff[k + band] * std::exp(cplx(0, k * grid.node(x)));
      }
      field[x] = v;
      total += (v * v.adjoint()) * grid.step;
    }
    Mat s_inv = psd_sqrt(total).inverse();
    std::vector<Mat> x_ops(nodes);
    for (int x = 0; x < nodes; ++x) {
      field[x] = s_inv * field[x];
      x_ops[x] = field[x] * field[x].adjoint();
    }
    Povm x_povm = Povm::grid_density(grid, std::move(x_ops));
    Povm y_povm = random_grid_povm(rng, dim, grid, band);

    GriddedDistribution x_law(grid, grid_masses(x_povm, rho), true);
    GriddedDistribution y_law(grid, grid_masses(y_povm, rho), true);
    const double lhs = differential_entropy(x_law) + differential_entropy(y_law);

    double sup = 0.0;
    for (int y = 0; y < nodes; ++y) {
      const Mat& yy = y_povm.op(y);
      for (int x = 0; x < nodes; ++x) {
        const double v = std::max(0.0, (field[x].adjoint() * yy * field[x])(0, 0).real());
        sup = std::max(sup, v);
      }
    }
    const double rhs = -std::log(sup) + von_neumann_entropy(rho);
    const double slack = lhs - rhs;
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_trial = t;
      out.worst_digest = digest_state(rho);
    }
    if (slack < -tol) ++out.violations;
  }
  return out;
}

}  // namespace shiftbound
