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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shiftbound/channels.hpp"
#include "shiftbound/random.hpp"
#include "shiftbound/scenario.hpp"

using namespace shiftbound;

namespace {

const double kPi = std::numbers::pi;

Scenario canonical_scenario(const DensityOperator& probe, int nodes = 512) {
  UniformGrid grid = UniformGrid::circle(nodes);
  return Scenario{probe, Generator::number(probe.dim()),
                  GriddedDistribution::uniform(grid), canonical_phase_povm(probe.dim(), grid),
                  1};
}

// grid-delta estimate response: all mass of eigenstate g at one node
Povm peaked_povm(const Generator& gen, const UniformGrid& grid) {
  std::vector<Mat> densities(grid.count, Mat::Zero(gen.dim(), gen.dim()));
  for (int i = 0; i < gen.level_count(); ++i) {
    // spread levels over distinct nodes
    const int node = grid.wrap_index(3 + 11 * i);
    densities[node] += gen.projector(i) / grid.step;
  }
  return Povm::grid_density(grid, std::move(densities));
}

}  // namespace

TEST_CASE("ki exact: canonical phase gives 2 pi for any prior") {
  UniformGrid grid = UniformGrid::circle(256);
  Generator num = Generator::number(5);
  Povm povm = canonical_phase_povm(5, grid);

  CHECK(ki_exact_discrete(GriddedDistribution::uniform(grid), povm, num).value ==
        doctest::Approx(2 * kPi).epsilon(1e-9));

  Rng rng(42);
  for (int t = 0; t < 5; ++t) {
    GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
    CHECK(ki_exact_discrete(prior, povm, num).value == doctest::Approx(2 * kPi).epsilon(1e-9));
  }
}

TEST_CASE("ki exact: peaked response attains 1/q_max") {
  UniformGrid grid = UniformGrid::circle(256);
  Generator num = Generator::number(4);
  Povm povm = peaked_povm(num, grid);
  Rng rng(7);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
  KiEstimate ki = ki_exact_discrete(prior, povm, num);
  // the refined supremum may sit slightly above the best node of a smooth
  // prior, so K_I can undershoot 1/q_max(nodes) by the interpolation gap
  CHECK(ki.value <= 1.0 / prior.max_density() + 1e-12);
  CHECK(ki.value >= (1.0 - 1e-3) / prior.max_density());
}

TEST_CASE("ki exact: uniform circle prior with any measurement") {
  UniformGrid grid = UniformGrid::circle(256);
  Generator num = Generator::number(4);
  Rng rng(12);
  Povm povm = random_grid_povm(rng, 4, grid, 3);
  KiEstimate ki = ki_exact_discrete(GriddedDistribution::uniform(grid), povm, num);
  CHECK(ki.value == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("ki ordering on ignorance-respecting scenarios") {
  UniformGrid grid = UniformGrid::circle(256);
  Generator num = Generator::number(5);
  Povm povm = canonical_phase_povm(5, grid);
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
    const double k_qmax = ki_from_qmax(prior).value;
    const double k_ign = ki_ignorance(prior).value;
    const double k_exact = ki_exact_discrete(prior, povm, num).value;
    CHECK(k_qmax <= k_ign + 1e-12);
    CHECK(k_ign <= k_exact + 1e-9);
  }
}

TEST_CASE("ki continuous surrogate: conjugate pair gives 2 pi") {
  UniformGrid pos = UniformGrid::interval(-12.0, 12.0, 64);
  Generator mom = Generator::momentum_surrogate(pos);
  // position measurement: delta densities |x><x| / step on the grid basis
  std::vector<Mat> densities;
  for (int i = 0; i < pos.count; ++i) {
    Mat d = Mat::Zero(pos.count, pos.count);
    d(i, i) = 1.0 / pos.step;
    densities.push_back(d);
  }
  Povm position = Povm::grid_density(pos, std::move(densities));
  GriddedDistribution prior = GriddedDistribution::uniform_on(pos, -6.0, 6.0);
  KiEstimate ki = ki_continuous_surrogate(prior, position, mom);
  CHECK(ki.approximate);
  CHECK(ki.value == doctest::Approx(2 * kPi).epsilon(1e-6));
}

TEST_CASE("averaged measurement: covariant family is prior-independent") {
  DensityOperator probe = DensityOperator::coherent(6, cplx(1.0, 0.2));
  Scenario s = canonical_scenario(probe, 128);
  Rng rng(3);
  GriddedDistribution smooth = random_smooth_prior(rng, s.prior.grid(), 3);
  Scenario s2{s.probe, s.gen, smooth, s.povm, 1};
  for (double y : {0.0, 5 * s.povm.grid().step, -9 * s.povm.grid().step}) {
    Mat a = averaged_povm(s, y);
    Mat b = averaged_povm(s2, y);
    const int node = s.povm.grid().nearest_index(y);
    CHECK(max_abs(a - s.povm.op(node)) < 1e-8);
    CHECK(max_abs(a - b) < 1e-8);
  }
}

TEST_CASE("averaged measurement: point prior conjugates the element") {
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(3);
  Rng rng(4);
  Povm povm = random_grid_povm(rng, 3, grid, 2);
  RVec mass = RVec::Zero(grid.count);
  const int x0 = 17;
  mass[x0] = 1.0;
  GriddedDistribution point(grid, mass);
  Scenario s{DensityOperator::fock(3, 0), num, point, povm, 1};
  const int r = 9;
  Mat direct = averaged_povm(s, r * grid.step);
  Mat u = shift_unitary(num, -grid.node(x0));
  Mat expected = u * povm.op((x0 + r) % grid.count) * u.adjoint();
  CHECK(max_abs(direct - expected) < 1e-12);
}

TEST_CASE("error law: eigenstate probe is uniform") {
  DensityOperator probe = DensityOperator::fock(8, 3);
  Scenario s = canonical_scenario(probe);
  ErrorLaw law = error_distribution(s);
  CHECK(law.defect() < 1e-10);
  for (int i = 0; i < law.law.size(); i += 37) {
    CHECK(law.law.density(i) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-9));
  }
  CHECK(rms_deviation(law.law, 0.0) == doctest::Approx(kPi / std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("error law: two-level superposition") {
  Vec plus(2);
  plus << 1.0, 1.0;
  DensityOperator probe = DensityOperator::pure(plus);
  Scenario s = canonical_scenario(probe);
  ErrorLaw law = error_distribution(s);
  // p_Y(y) = (1 + cos y) / 2 pi
  for (int i = 0; i < law.law.size(); i += 41) {
    const double y = law.law.grid().node(i);
    CHECK(law.law.density(i) == doctest::Approx((1 + std::cos(y)) / (2 * kPi)).epsilon(1e-6));
  }
  CHECK(rms_deviation(law.law, 0.0) ==
        doctest::Approx(std::sqrt(kPi * kPi / 3.0 - 2.0)).epsilon(1e-4));
}

TEST_CASE("error law matches the averaged-measurement route") {
  Rng rng(8);
  UniformGrid grid = UniformGrid::circle(128);
  Generator gen = random_integer_generator(rng, 5, 6, true);
  Povm povm = random_grid_povm(rng, 5, grid, 3);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
  DensityOperator probe = random_density(rng, 5, 3);
  Scenario s{probe, gen, prior, povm, 1};
  ErrorLaw law = error_distribution(s);
  for (int k = 0; k < 16; ++k) {
    const int r = (k * 23) % grid.count;
    const int centered = (r + grid.count / 2) % grid.count;  // law grid starts at -pi
    const double direct =
        real_trace_product(probe.matrix(), averaged_povm(s, r * grid.step)) * grid.step;
    CHECK(law.law.mass(centered) * law.raw_total == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("error law: line-grid shift bookkeeping") {
  // point prior and a projective position-like measurement: the error law is
  // the relabelled response
  const int d = 4;
  UniformGrid grid = UniformGrid::interval(-8.0, 8.0, 256);
  Generator ham = Generator::from_eigenvalues((RVec(4) << 0.0, 1.0, 2.0, 3.0).finished(), 0.0);
  Povm quad = quadrature_povm(d, grid);
  RVec mass = RVec::Zero(grid.count);
  mass[grid.count / 2] = 1.0;  // prior concentrated at one node
  GriddedDistribution point(grid, mass);
  DensityOperator probe = DensityOperator::fock(d, 0);
  Scenario s{probe, ham, point, quad, 1};
  ErrorLaw law = error_distribution(s);
  CHECK(law.defect() < 1e-6);
  // the error law is the vacuum quadrature law shifted by the prior node
  const double x0 = grid.node(grid.count / 2);
  double worst = 0.0;
  for (int i = 0; i < law.law.size(); ++i) {
    const double y = law.law.grid().node(i);
    const double expected =
        std::pow(hermite_function(0, y + x0), 2);
    worst = std::max(worst, std::abs(law.law.density(i) - expected));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("eigenstate responses") {
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(5);
  Povm phase = canonical_phase_povm(5, grid);
  for (int level : {0, 2, 4}) {
    GriddedDistribution resp = eigenstate_response(phase, num, level);
    for (int i = 0; i < resp.size(); i += 29) {
      CHECK(resp.density(i) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-9));
    }
  }

  Povm proj = projective_generator_povm(num, grid);
  GriddedDistribution point = eigenstate_response(proj, num, 3);
  CHECK(point.mass(grid.nearest_index(3.0)) == doctest::Approx(1.0).epsilon(1e-12));

  UniformGrid line = UniformGrid::interval(-9.0, 9.0, 512);
  Povm quad = quadrature_povm(5, line);
  GriddedDistribution resp = eigenstate_response(quad, num, 2);
  // |<x|2>|^2 profile, clearly non-uniform
  double worst = 0.0;
  for (int i = 0; i < resp.size(); ++i) {
    worst = std::max(worst, std::abs(resp.density(i) -
                                     std::pow(hermite_function(2, line.node(i)), 2)));
  }
  CHECK(worst < 1e-9);
  CHECK_THROWS(eigenstate_response(quad, num, 9));
}

TEST_CASE("necessary condition for exploiting prior information") {
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(5);
  CHECK_FALSE(exploits_prior_necessary_condition(canonical_phase_povm(5, grid), num, 1e-6));
  CHECK(exploits_prior_necessary_condition(projective_generator_povm(num, grid), num, 1e-6));
  UniformGrid line = UniformGrid::interval(-9.0, 9.0, 512);
  CHECK(exploits_prior_necessary_condition(quadrature_povm(5, line), num, 1e-6));
}

TEST_CASE("covariance detection") {
  UniformGrid grid = UniformGrid::circle(96);
  Generator num = Generator::number(4);
  Povm phase = canonical_phase_povm(4, grid);
  CHECK(is_covariant(phase, num, 1e-9));

  // swapping two elements keeps completeness and positivity but breaks the
  // covariance pattern
  std::vector<Mat> ops;
  for (int i = 0; i < phase.size(); ++i) ops.push_back(phase.op(i));
  std::swap(ops[10], ops[40]);
  Povm perturbed = Povm::grid_density(grid, std::move(ops));
  CHECK_FALSE(is_covariant(perturbed, num, 1e-9));

  // averaged family of a covariant measurement stays covariant
  Rng rng(6);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 2);
  Scenario s{DensityOperator::fock(4, 0), num, prior, phase, 1};
  std::vector<Mat> averaged;
  for (int i = 0; i < grid.count; ++i) {
    averaged.push_back(averaged_povm(s, grid.node(i)));
  }
  Povm avg = Povm::grid_density(grid, std::move(averaged));
  CHECK(is_covariant(avg, num, 1e-8));
}

TEST_CASE("m-copy composition") {
  DensityOperator probe = DensityOperator::coherent(3, cplx(0.6, 0.0));
  UniformGrid grid = UniformGrid::circle(64);
  Scenario s{probe, Generator::number(3), GriddedDistribution::uniform(grid),
             canonical_phase_povm(3, grid), 1};
  Scenario m1 = m_copy_scenario(s, 1, s.povm);
  CHECK(m1.gen.dim() == 3);

  Scenario m2 = m_copy_scenario(s, 2, canonical_phase_povm(9, grid));
  CHECK(m2.probe.dim() == 9);
  CHECK(m2.gen.min_gap().value() == doctest::Approx(1.0));  // gap preserved
  const double single = generator_mean_abs_dev(s.gen, s.probe, 0.0);
  CHECK(generator_mean_abs_dev(m2.gen, m2.probe, 0.0) ==
        doctest::Approx(2 * single).epsilon(1e-9));

  CHECK_THROWS(m_copy_scenario(s, 9, s.povm));  // 3^9 > 4096
}

TEST_CASE("shift-invariant joint estimate") {
  CHECK(shift_invariant_joint_estimate({1.0, 2.0, 3.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}) ==
        doctest::Approx(2.0));
  CHECK(shift_invariant_joint_estimate({1.0, 2.0, 3.0}, {1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS(shift_invariant_joint_estimate({1.0, 2.0}, {0.6, 0.6}));

  // the defining identity: shifting all samples shifts the estimate
  const std::vector<double> samples{0.3, 1.1, 2.9};
  const std::vector<double> weights{0.2, 0.5, 0.3};
  const double base = shift_invariant_joint_estimate(samples, weights);
  for (double y : {0.17, -2.3}) {
    std::vector<double> shifted;
    for (double v : samples) shifted.push_back(v + y);
    CHECK(shift_invariant_joint_estimate(shifted, weights) ==
          doctest::Approx(base + y).epsilon(1e-12));
  }

  // periodic version wraps through the seam consistently
  const double p = 2 * kPi;
  const double near_seam =
      shift_invariant_joint_estimate({6.2, 0.1}, {0.5, 0.5}, p);
  CHECK(std::abs(UniformGrid::circle(4).wrap_centered(near_seam - (6.2 + 0.1 + p) / 2)) <
        1e-12);
}

TEST_CASE("joint estimator covariance") {
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(3);
  Povm phase = canonical_phase_povm(3, grid);
  CHECK(joint_estimator_covariance_check(phase, num, {0.5, 0.5}, 1e-9));
  CHECK(joint_estimator_covariance_check(phase, num, {1.0, 0.0}, 1e-9));
  // non-shift-invariant estimator breaks covariance
  CHECK_FALSE(joint_estimator_covariance_check(
      phase, num, {0.5, 0.5}, 1e-9, [](double x1, double) { return x1 * x1; }));
}

TEST_CASE("scenario pipeline is covariant under prior rotation") {
  Rng rng(17);
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(4);
  Povm phase = canonical_phase_povm(4, grid);
  DensityOperator probe = random_density(rng, 4, 2);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
  Scenario s{probe, num, prior, phase, 1};
  RunResult base = run_scenario(s);

  // rigid rotation of the prior
  const int r = 31;
  RVec rotated(grid.count);
  for (int i = 0; i < grid.count; ++i) rotated[(i + r) % grid.count] = prior.mass(i);
  Scenario s2{probe, num, GriddedDistribution(grid, rotated), phase, 1};
  RunResult rot = run_scenario(s2);
  CHECK(rot.achieved.delta_x == doctest::Approx(base.achieved.delta_x).epsilon(1e-9));
  CHECK(rot.achieved.h_y == doctest::Approx(base.achieved.h_y).epsilon(1e-9));
}

TEST_CASE("run_scenario: floors respected on canonical examples") {
  DensityOperator probe = DensityOperator::coherent(24, cplx(1.7, 0.0));
  Scenario s = canonical_scenario(probe);
  RunResult r = run_scenario(s);
  CHECK(violated_floors(r.report, r.achieved, 1e-3).empty());

  const BoundEntry* gen = r.report.find("phasegen");
  REQUIRE(gen != nullptr);
  const double n_mean = mean_photon_number(probe);
  CHECK(gen->value ==
        doctest::Approx(consts::sqrt_2pi_over_e3() / (1.0 + n_mean)).epsilon(1e-9));
  CHECK(r.achieved.delta_x >= gen->value);

  // eigenstate probe: achieved entropy exactly matches the floor
  RunResult re = run_scenario(canonical_scenario(DensityOperator::fock(8, 2)));
  CHECK(re.achieved.h_y == doctest::Approx(std::log(2 * kPi)).epsilon(1e-9));
  const BoundEntry* hb = re.report.find("hbound");
  REQUIRE(hb != nullptr);
  CHECK(hb->value == doctest::Approx(std::log(2 * kPi)).epsilon(1e-9));
}

TEST_CASE("covariant measurement for degenerate commensurate spectra") {
  // two-mode difference generator: 1/2-spaced levels, period 4 pi
  Generator mz = Generator::mach_zehnder(2);
  UniformGrid grid = UniformGrid::periodic_interval(4 * kPi, 256);
  Povm cov = covariant_generator_povm(mz, grid);
  CHECK(cov.completeness_defect() < 1e-10);
  CHECK(is_covariant(cov, mz, 1e-9));
  // every eigenstate response is flat: prior information cannot help
  CHECK_FALSE(exploits_prior_necessary_condition(cov, mz, 1e-9));
  // so K_I equals the full parameter period, here 4 pi = 2 pi / gap
  Rng rng(15);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
  CHECK(ki_exact_discrete(prior, cov, mz).value == doctest::Approx(4 * kPi).epsilon(1e-9));

  CHECK_THROWS(covariant_generator_povm(mz, UniformGrid::circle(256)));  // wrong period
}

TEST_CASE("two-copy joint covariant estimate respects the m = 2 floor") {
  const int d = 3;
  UniformGrid grid = UniformGrid::circle(256);
  DensityOperator single = DensityOperator::coherent(d, cplx(0.8, 0.0));
  Scenario base{single, Generator::number(d), GriddedDistribution::uniform(grid),
                canonical_phase_povm(d, grid), 1};
  Generator gt = tensor_sum(base.gen, base.gen);
  Scenario joint = m_copy_scenario(base, 2, covariant_generator_povm(gt, grid));

  ErrorLaw law = error_distribution(joint);
  const double delta = rms_deviation(law.law, 0.0);
  const double relative = delta / (2 * kPi);

  const double madev_single = generator_mean_abs_dev(base.gen, base.probe, 0.0);
  const double floor_m2 = relative_resolution_bound(2, madev_single, 1.0, true);
  CHECK(relative >= floor_m2);
  CHECK(floor_m2 < relative_resolution_bound(1, madev_single, 1.0, true));

  // covariant joint family: K_I stays 2 pi under any prior
  Rng rng(44);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 2);
  CHECK(ki_exact_discrete(prior, joint.povm, gt).value ==
        doctest::Approx(2 * kPi).epsilon(1e-9));
}

namespace {

// direct O(levels * N^2) evaluation of the supremum behind K_I, independent
// of the correlation path
double ki_direct_oracle(const GriddedDistribution& prior, const Povm& povm,
                        const Generator& gen) {
  double sup = 0.0;
  const int np = povm.size();
  const int nq = prior.size();
  const bool circular = povm.periodic();
  const long offset0 = circular ? 0
                                : std::lround((prior.grid().start - povm.grid().start) /
                                              povm.grid().step);
  const int lo = circular ? 0 : -(nq - 1);
  const int hi = circular ? np : np;
  for (int level = 0; level < gen.level_count(); ++level) {
    Mat basis = gen.eigenspace_basis(level);
    for (int r = lo; r < hi; ++r) {
      Mat acc = Mat::Zero(basis.cols(), basis.cols());
      for (int j = 0; j < nq; ++j) {
        long u = (circular ? j : offset0 + j) + r;
        if (circular) {
          u = ((u % np) + np) % np;
        } else if (u < 0 || u >= np) {
          continue;
        }
        acc += prior.mass(j) * (basis.adjoint() * povm.op(static_cast<int>(u)) * basis);
      }
      HermEig eig = herm_eig(acc);
      sup = std::max(sup, eig.values[eig.values.size() - 1]);
    }
  }
  return 1.0 / sup;
}

}  // namespace

TEST_CASE("ki exact agrees with the direct supremum oracle") {
  Rng rng(2718);
  // periodic case
  {
    UniformGrid grid = UniformGrid::circle(96);
    const int d = 4;
    Generator gen = random_integer_generator(rng, d, d + 1, true);
    Povm povm = random_grid_povm(rng, d, grid, 2);
    GriddedDistribution prior = random_smooth_prior(rng, grid, 2);
    const double oracle = ki_direct_oracle(prior, povm, gen);
    KiEstimate ki = ki_exact_discrete(prior, povm, gen);
    CHECK(ki.value <= oracle + 1e-9);             // refinement can only raise the sup
    CHECK(ki.value >= oracle * (1.0 - 2e-3));     // and only by the interpolation gap
  }
  // line case: quadrature estimate of a ladder Hamiltonian
  {
    const int d = 4;
    UniformGrid line = UniformGrid::interval(-8.0, 8.0, 160);
    Generator ham = Generator::number(d);
    Povm quad = quadrature_povm(d, line);
    GriddedDistribution prior = GriddedDistribution::gaussian(line, 0.4, 1.0);
    const double oracle = ki_direct_oracle(prior, quad, ham);
    KiEstimate ki = ki_exact_discrete(prior, quad, ham);
    CHECK(ki.value <= oracle + 1e-9);
    CHECK(ki.value >= oracle * (1.0 - 2e-3));
    CHECK(ki.value >= ki_from_qmax(prior).value - 1e-9);  // universal floor
  }
}

TEST_CASE("line error law matches the averaged-measurement route") {
  const int d = 3;
  UniformGrid line = UniformGrid::interval(-8.0, 8.0, 128);
  Generator ham = Generator::number(d);
  Povm quad = quadrature_povm(d, line);
  GriddedDistribution prior =
      GriddedDistribution::uniform_on(line, -2.0, 2.0);
  Rng rng(3100);
  DensityOperator probe = random_density(rng, d, 2);
  Scenario s{probe, ham, prior, quad, 1};
  ErrorLaw law = error_distribution(s);
  const int nq = prior.size();
  for (int k = 0; k < 8; ++k) {
    const int idx = (k * 29) % law.law.size();
    const double y = law.law.grid().node(idx);
    const double direct =
        real_trace_product(probe.matrix(), averaged_povm(s, y)) * line.step;
    CHECK(law.law.mass(idx) * law.raw_total == doctest::Approx(direct).epsilon(1e-9));
  }
  (void)nq;
}

TEST_CASE("ki exact: degenerate eigenspace needs the compressed maximizer") {
  // level 1 of G is two-dimensional; one POVM element is a point mass on a
  // superposition inside that eigenspace
  const int d = 3;
  UniformGrid grid = UniformGrid::circle(128);
  Generator g = Generator::from_eigenvalues((RVec(3) << 0.0, 1.0, 1.0).finished(), 0.0);
  Vec psi(3);
  psi << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  Mat peak = psi * psi.adjoint();
  const int u0 = 31;
  std::vector<Mat> densities(grid.count);
  for (int u = 0; u < grid.count; ++u) {
    densities[u] = (Mat::Identity(d, d) - peak) / (2 * kPi);
    if (u == u0) densities[u] += peak / grid.step;
  }
  Povm povm = Povm::grid_density(grid, std::move(densities));
  Rng rng(23);
  GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
  KiEstimate ki = ki_exact_discrete(prior, povm, g);
  // the supremum over the eigenspace reaches the full prior peak; any single
  // basis vector only sees half of it
  CHECK(ki.value <= 1.0 / prior.max_density() + 1e-9);
  CHECK(ki.value >= (1.0 - 1e-3) / prior.max_density());
  const double naive = 1.0 / (0.5 * prior.max_density() + 0.25 / kPi);
  CHECK(ki.value < naive - 1e-6);

  // the eigenstate response of the degenerate level is the maximizer's
  GriddedDistribution resp = eigenstate_response(povm, g, 1);
  CHECK(resp.mass(u0) > 0.99);
}

TEST_CASE("scenario validation") {
  UniformGrid grid = UniformGrid::circle(64);
  Generator num = Generator::number(3);
  Povm phase = canonical_phase_povm(3, grid);
  // dimension mismatch
  CHECK_THROWS(validate(Scenario{DensityOperator::fock(4, 0), Generator::number(4),
                                 GriddedDistribution::uniform(grid), phase, 1}));
  // mixed periodic/line grids
  UniformGrid line = UniformGrid::interval(0.0, 2 * kPi, 64);
  CHECK_THROWS(validate(Scenario{DensityOperator::fock(3, 0), num,
                                 GriddedDistribution::uniform(line), phase, 1}));
  // line prior outside the measurement range
  UniformGrid wide = UniformGrid::interval(-20.0, 20.0, 800);
  UniformGrid narrow = UniformGrid::interval(-8.0, 8.0, 320);
  Povm quad = quadrature_povm(3, narrow);
  CHECK_THROWS(validate(Scenario{DensityOperator::fock(3, 0), num,
                                 GriddedDistribution::gaussian(wide, 0.0, 2.0), quad, 1}));
}

TEST_CASE("covariant family: error law is prior-independent") {
  Rng rng(55);
  UniformGrid grid = UniformGrid::circle(128);
  Generator num = Generator::number(4);
  Povm phase = canonical_phase_povm(4, grid);
  DensityOperator probe = random_density(rng, 4, 2);
  ErrorLaw uniform_law = error_distribution(
      Scenario{probe, num, GriddedDistribution::uniform(grid), phase, 1});
  for (int t = 0; t < 4; ++t) {
    GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
    ErrorLaw law = error_distribution(Scenario{probe, num, prior, phase, 1});
    CHECK(total_variation(law.law, uniform_law.law) < 1e-9);
  }
}

TEST_CASE("covariant families cannot pass the prior-exploitation test") {
  // random covariant families: phase kernels with random unit-diagonal seeds
  Rng rng(66);
  std::normal_distribution<double> gauss(0.0, 1.0);
  UniformGrid grid = UniformGrid::circle(128);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 4);
    Mat g(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    }
    Mat seed = g * g.adjoint();
    RVec diag = seed.diagonal().real();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) seed(i, j) /= std::sqrt(diag[i] * diag[j]);
    }
    std::vector<Mat> densities;
    for (int x = 0; x < grid.count; ++x) {
      Mat m(d, d);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          m(a, b) = seed(a, b) * std::exp(cplx(0, -(a - b) * grid.node(x))) / (2 * kPi);
        }
      }
      densities.push_back(m);
    }
    Povm covariant = Povm::grid_density(grid, std::move(densities));
    Generator num = Generator::number(d);
    // the implication: covariant => cannot exploit prior information
    CHECK(is_covariant(covariant, num, 1e-9));
    CHECK_FALSE(exploits_prior_necessary_condition(covariant, num, 1e-9));
    // and its K_I is pinned at the full period
    GriddedDistribution prior = random_smooth_prior(rng, grid, 2);
    CHECK(ki_exact_discrete(prior, covariant, num).value ==
          doctest::Approx(2 * kPi).epsilon(1e-9));
  }
}

TEST_CASE("noisy scenario report carries the noise floors") {
  UniformGrid grid = UniformGrid::circle(256);
  const int d = 24;
  DensityOperator probe = DensityOperator::coherent(d, cplx(1.0, 0.0));
  const double n_mean = mean_photon_number(probe);
  GaussianChannelResult noisy = gaussian_noise_channel(probe, 1.0);
  Scenario s{noisy.state, Generator::number(d), GriddedDistribution::uniform(grid),
             canonical_phase_povm(d, grid), 1};
  RunOptions opts;
  opts.noise = NoiseContext{1.0, n_mean, von_neumann_entropy(noisy.state)};
  RunResult r = run_scenario(s, opts);
  const BoundEntry* phasen = r.report.find("phasen");
  REQUIRE(phasen != nullptr);
  CHECK(phasen->value == doctest::Approx(noisy_phase_relative_bound(n_mean, 1.0)));
  REQUIRE(r.report.find("gen1") != nullptr);
  REQUIRE(r.report.find("gendis1") != nullptr);
  CHECK(r.report.find("mi_cap") != nullptr);
  CHECK(violated_floors(r.report, r.achieved, 1e-3).empty());
  // the rank-1 noisy floor is boosted by e^S
  CHECK(r.report.find("gen1")->value >
        generic_bound(r.ki, generator_mean_abs_dev(s.gen, s.probe, 0.0), 1.0,
                      SpectrumKind::Discrete, true));
}

TEST_CASE("master inequality: randomized smoke") {
  Rng rng(2024);
  UniformGrid grid = UniformGrid::circle(256);
  for (int t = 0; t < 10; ++t) {
    const int d = 2 + static_cast<int>(rng() % 7);
    Generator gen = random_integer_generator(rng, d, d + 2, t % 2 == 0);
    Povm povm = random_grid_povm(rng, d, grid, 3);
    GriddedDistribution prior = random_smooth_prior(rng, grid, 3);
    DensityOperator probe = random_density(rng, d, std::max(1, d / 2));
    RunResult r = run_scenario(Scenario{probe, gen, prior, povm, 1});
    CAPTURE(t);
    CHECK(violated_floors(r.report, r.achieved, 1e-3).empty());
  }
}
