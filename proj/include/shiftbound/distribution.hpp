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

#ifndef SHIFTBOUND_DISTRIBUTION_HPP
#define SHIFTBOUND_DISTRIBUTION_HPP

#include <functional>
#include <vector>

#include "shiftbound/grid.hpp"
#include "shiftbound/linalg.hpp"

namespace shiftbound {

/// Probability distribution on a uniform grid. Weights are probability
/// mass per node (density * step); density(i) = mass(i) / step.
class GriddedDistribution {
 public:
  GriddedDistribution(UniformGrid grid, RVec masses, bool renormalize = false);

  static GriddedDistribution uniform(const UniformGrid& grid);
  /// Uniform over the nodes falling inside [a, b]; zero elsewhere.
  static GriddedDistribution uniform_on(const UniformGrid& grid, double a, double b);
  static GriddedDistribution gaussian(const UniformGrid& grid, double mu, double sigma);
  static GriddedDistribution from_density(const UniformGrid& grid,
                                          const std::function<double(double)>& density,
                                          bool renormalize = true);

  const UniformGrid& grid() const { return grid_; }
  const RVec& masses() const { return masses_; }
  int size() const { return grid_.count; }
  double mass(int i) const { return masses_[i]; }
  double density(int i) const { return masses_[i] / grid_.step; }
  double max_density() const { return masses_.maxCoeff() / grid_.step; }
  bool periodic() const { return grid_.periodic; }

  double total_mass() const;
  double mean() const;

 private:
  UniformGrid grid_;
  RVec masses_;
};

/// Probability distribution on a contiguous run of integers.
class IntegerDistribution {
 public:
  IntegerDistribution(int support_offset, RVec probs, bool renormalize = false);

  int offset() const { return offset_; }
  const RVec& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  int value(int i) const { return offset_ + i; }

  double mean_abs(double ref = 0.0) const;

 private:
  int offset_;
  RVec probs_;
};

/// -sum p ln p in nats, with 0 ln 0 = 0.
double shannon_entropy(const IntegerDistribution& d);
double shannon_entropy(const RVec& probs);

/// Piecewise-constant (histogram) convention: -sum m ln(m/step), i.e. the
/// Shannon entropy of the binned masses plus ln step. In nats.
double differential_entropy(const GriddedDistribution& d);

/// sqrt(sum m * dev^2) with deviations wrapped into the centered period
/// for periodic grids.
double rms_deviation(const GriddedDistribution& d, double center);

double mean_abs_deviation(const std::vector<double>& values,
                          const std::vector<double>& probs, double ref);

/// Smallest support point where the cumulative mass crosses 1/2. A node at
/// which the cumulative equals 1/2 exactly (to 1e-12) does not count as a
/// crossing; the next node does.
double median(const std::vector<double>& values, const std::vector<double>& probs);

/// Fisher information of the density: sum q (d ln q / dx)^2 step, central
/// differences (one-sided at the ends), densities clamped below 1e-300.
double fisher_information(const GriddedDistribution& d);

/// Total-variation distance (half L1 of masses). Grids must match.
double total_variation(const GriddedDistribution& a, const GriddedDistribution& b);

}  // namespace shiftbound

#endif  // SHIFTBOUND_DISTRIBUTION_HPP
