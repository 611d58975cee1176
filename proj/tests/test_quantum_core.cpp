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

#include <cmath>
#include <numbers>

#include "shiftbound/generator.hpp"
#include "shiftbound/povm.hpp"
#include "shiftbound/random.hpp"
#include "shiftbound/state.hpp"

using namespace shiftbound;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("density operator validation") {
  Mat ok = Mat::Zero(2, 2);
  ok(0, 0) = 0.75;
  ok(1, 1) = 0.25;
  CHECK_NOTHROW(DensityOperator::from_matrix(ok));

  Mat non_herm = ok;
  non_herm(0, 1) = cplx(0.1, 0.0);
  CHECK_THROWS(DensityOperator::from_matrix(non_herm));

  Mat bad_trace = 1.01 * ok;
  CHECK_THROWS(DensityOperator::from_matrix(bad_trace));

  Mat negative = Mat::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS(DensityOperator::from_matrix(negative));
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityOperator::fock(6, 3)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(5)) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  CHECK(von_neumann_entropy(DensityOperator::from_matrix(rho)) ==
        doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("state factories") {
  DensityOperator coh = DensityOperator::coherent(40, cplx(1.5, 0.0));
  CHECK(mean_photon_number(coh) == doctest::Approx(2.25).epsilon(1e-8));
  DensityOperator th = DensityOperator::thermal(60, 0.5);
  CHECK(mean_photon_number(th) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(th.matrix()(1, 1).real() / th.matrix()(0, 0).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("tensor products") {
  DensityOperator rho = DensityOperator::coherent(3, cplx(0.3, 0.1));
  DensityOperator rr = tensor_product(rho, rho);
  CHECK(rr.dim() == 9);
  CHECK(rr.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  Generator g = Generator::from_eigenvalues((RVec(2) << 0.0, 1.0).finished(), 0.0);
  Generator gt = tensor_sum(g, g);
  CHECK(gt.level_count() == 3);
  CHECK(gt.level(0) == doctest::Approx(0.0));
  CHECK(gt.level(1) == doctest::Approx(1.0));
  CHECK(gt.level(2) == doctest::Approx(2.0));
  CHECK(gt.multiplicity(1) == 2);
  CHECK(gt.min_gap().value() == doctest::Approx(1.0));
}

TEST_CASE("shift dynamics") {
  Rng rng(7);
  Generator num = Generator::number(4);
  DensityOperator rho = random_density(rng, 4, 4);
  CHECK(max_abs(apply_shift(rho, num, 0.0).matrix() - rho.matrix()) == doctest::Approx(0.0));

  // eigenstates are invariant
  DensityOperator fock2 = DensityOperator::fock(4, 2);
  CHECK(max_abs(apply_shift(fock2, num, 1.234).matrix() - fock2.matrix()) < 1e-12);

  // |+> -> |-> under G = diag(0, 1) at x = pi
  Vec plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  Generator qubit = Generator::from_eigenvalues((RVec(2) << 0.0, 1.0).finished(), 0.0);
  DensityOperator shifted = apply_shift(DensityOperator::pure(plus), qubit, kPi);
  CHECK(max_abs(shifted.matrix() - DensityOperator::pure(minus).matrix()) < 1e-12);

  // composition
  Generator g = random_integer_generator(rng, 5, 7, true);
  DensityOperator state = random_density(rng, 5, 3);
  DensityOperator a = apply_shift(apply_shift(state, g, 0.37), g, -1.11);
  DensityOperator b = apply_shift(state, g, 0.37 - 1.11);
  CHECK(max_abs(a.matrix() - b.matrix()) < 1e-9);

  CHECK_THROWS(apply_shift(DensityOperator::fock(3, 0), num, 0.1));
}

TEST_CASE("eigenprojector structure") {
  Rng rng(21);
  Mat u = random_unitary(rng, 4);
  RVec vals(4);
  vals << 0.0, 1.0, 1.0, 2.0;
  Mat gm = u * vals.asDiagonal() * u.adjoint();
  Generator g = Generator::from_matrix(hermitize(gm));
  CHECK(g.level_count() == 3);
  Mat sum = Mat::Zero(4, 4);
  for (int i = 0; i < g.level_count(); ++i) {
    Mat p = g.projector(i);
    CHECK(max_abs(p * p - p) < 1e-9);
    for (int j = 0; j < i; ++j) {
      CHECK(max_abs(p * g.projector(j)) < 1e-9);
    }
    sum += p;
  }
  CHECK(max_abs(sum - Mat::Identity(4, 4)) < 1e-9);
}

TEST_CASE("minimum spectral gap") {
  CHECK(min_spectral_gap(Generator::number(6), 1e-9) == doctest::Approx(1.0));
  CHECK(min_spectral_gap(Generator::from_eigenvalues((RVec(3) << 0.0, 0.3, 1.0).finished()),
                         1e-9) == doctest::Approx(0.3));
  CHECK_THROWS(
      min_spectral_gap(Generator::from_eigenvalues((RVec(2) << 1.0, 1.0).finished()), 1e-9));

  Generator mz = Generator::mach_zehnder(3);
  CHECK(mz.level_count() == 7);  // 2 N_max + 1 distinct values
  CHECK(mz.min_gap().value() == doctest::Approx(0.5));
  CHECK(mz.lower_bound().value() == doctest::Approx(-1.5));
}

TEST_CASE("canonical phase measurement") {
  UniformGrid grid = UniformGrid::circle(64);

  Povm one = canonical_phase_povm(1, grid);
  for (int i = 0; i < 64; i += 13) {
    CHECK(one.op(i)(0, 0).real() == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
  }

  Povm five = canonical_phase_povm(5, grid);
  CHECK(five.completeness_defect() < 1e-12);
  for (int n = 0; n < 5; ++n) {
    for (int i = 0; i < 64; i += 17) {
      CHECK(five.op(i)(n, n).real() == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
    }
  }

  // superposition density (1 + cos phi)/(2 pi)
  Vec plus(2);
  plus << 1.0, 1.0;
  DensityOperator rho = DensityOperator::pure(plus);
  Povm two = canonical_phase_povm(2, grid);
  for (int i = 0; i < 64; i += 7) {
    const double expected = (1.0 + std::cos(grid.node(i))) / (2 * kPi);
    CHECK(real_trace_product(rho.matrix(), two.op(i)) == doctest::Approx(expected).epsilon(1e-12));
  }

  CHECK_THROWS(canonical_phase_povm(4, UniformGrid::interval(0.0, 2 * kPi, 64)));
  CHECK_THROWS(canonical_phase_povm(4, UniformGrid::periodic_interval(4 * kPi, 64)));
}

TEST_CASE("canonical phase is covariant on the grid") {
  UniformGrid grid = UniformGrid::circle(48);
  Rng rng(5);
  Generator num = Generator::number(4);
  Povm povm = canonical_phase_povm(4, grid);
  DensityOperator rho = random_density(rng, 4, 2);
  const int shift_nodes = 7;
  DensityOperator shifted = apply_shift(rho, num, shift_nodes * grid.step);
  RVec before = grid_masses(povm, rho);
  RVec after = grid_masses(povm, shifted);
  for (int i = 0; i < grid.count; ++i) {
    CHECK(after[(i + shift_nodes) % grid.count] == doctest::Approx(before[i]).epsilon(1e-9));
  }
}

TEST_CASE("projective and quadrature measurements") {
  Generator num = Generator::number(3);
  UniformGrid grid = UniformGrid::circle(32);
  Povm proj = projective_generator_povm(num, grid);
  CHECK(proj.completeness_defect() < 1e-12);
  // all mass of |2><2| sits at the node nearest eigenvalue 2
  DensityOperator f2 = DensityOperator::fock(3, 2);
  RVec m = grid_masses(proj, f2);
  CHECK(m[grid.nearest_index(2.0)] == doctest::Approx(1.0).epsilon(1e-12));

  UniformGrid line = UniformGrid::interval(-10.0, 10.0, 400);
  Povm quad = quadrature_povm(6, line);
  CHECK(quad.completeness_defect() < 1e-8);

  // povm constructor rejects an incomplete family
  std::vector<Mat> half = {0.5 * Mat::Identity(2, 2)};
  CHECK_THROWS(Povm::finite(half));
  std::vector<Mat> non_psd = {Mat::Identity(2, 2) * 1.5, -0.5 * Mat::Identity(2, 2)};
  CHECK_THROWS(Povm::finite(non_psd));
}

TEST_CASE("povm tensor product") {
  Rng rng(31);
  Povm a = random_finite_povm(rng, 2, 2);
  Povm b = random_finite_povm(rng, 3, 3);
  Povm ab = tensor_product(a, b);
  CHECK(ab.dim() == 6);
  CHECK(ab.size() == 6);
  CHECK(ab.completeness_defect() < 1e-10);
  CHECK_THROWS(tensor_product(a, canonical_phase_povm(2, UniformGrid::circle(16))));
}

TEST_CASE("generator entropy never beats the gap cap") {
  // H(G) <= ln[1 + 2 <|G-g|> / gap] + 1, factor 2 dropped at g = g_min
  Rng rng(808);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + static_cast<int>(rng() % 9);
    Generator g = random_integer_generator(rng, d, d + 3, t % 2 == 0);
    DensityOperator rho = random_density(rng, d, 1 + static_cast<int>(rng() % d));
    const double h = generator_entropy(g, rho);
    const double gap = g.min_gap().value();
    // arbitrary reference eigenvalue
    const double g_ref = g.level(static_cast<int>(rng() % g.level_count()));
    const double madev = generator_mean_abs_dev(g, rho, g_ref);
    CHECK(h <= std::log(1.0 + 2.0 * madev / gap) + 1.0 + 1e-9);
    // bounded-below choice drops the factor 2
    const double madev_min = generator_mean_abs_dev(g, rho, g.lower_bound().value());
    CHECK(h <= std::log(1.0 + madev_min / gap) + 1.0 + 1e-9);
  }
}

TEST_CASE("hermite functions are orthonormal on the grid") {
  UniformGrid line = UniformGrid::interval(-9.0, 9.0, 600);
  for (int a = 0; a < 5; ++a) {
    for (int b = a; b < 5; ++b) {
      double dot = 0.0;
      for (int i = 0; i < line.count; ++i) {
        dot += hermite_function(a, line.node(i)) * hermite_function(b, line.node(i)) * line.step;
      }
      CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}
