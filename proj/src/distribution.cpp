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

#include "shiftbound/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftbound {

namespace {
constexpr double kMassTol = 1e-9;
constexpr double kIntTol = 1e-12;

double neg_p_ln_p(double p) {
  return p > 0.0 ? -p * std::log(p) : 0.0;
}
}  // namespace

GriddedDistribution::GriddedDistribution(UniformGrid grid, RVec masses, bool renormalize)
    : grid_(grid), masses_(std::move(masses)) {
  validate(grid_);
  if (masses_.size() != grid_.count) {
    throw std::invalid_argument("GriddedDistribution: weights/grid size mismatch");
  }
  for (int i = 0; i < masses_.size(); ++i) {
    if (masses_[i] < 0) {
      if (masses_[i] > -1e-12) {
        masses_[i] = 0.0;  // numerical dust
      } else {
        throw std::invalid_argument("GriddedDistribution: negative weight");
      }
    }
  }
  const double total = total_mass();
  if (renormalize) {
    if (total <= 0) throw std::invalid_argument("GriddedDistribution: zero total mass");
    masses_ /= total;
  } else if (std::abs(total - 1.0) > kMassTol) {
    throw std::invalid_argument("GriddedDistribution: total mass " + std::to_string(total) +
                                " not within 1e-9 of 1");
  }
}

GriddedDistribution GriddedDistribution::uniform(const UniformGrid& grid) {
  return GriddedDistribution(grid, RVec::Constant(grid.count, 1.0 / grid.count));
}

GriddedDistribution GriddedDistribution::uniform_on(const UniformGrid& grid, double a, double b) {
  RVec m = RVec::Zero(grid.count);
  int hits = 0;
  for (int i = 0; i < grid.count; ++i) {
    const double x = grid.node(i);
    if (x >= a - 1e-12 && x <= b + 1e-12) {
      m[i] = 1.0;
      ++hits;
    }
  }
  if (hits == 0) throw std::invalid_argument("uniform_on: no grid nodes in [a,b]");
  return GriddedDistribution(grid, m / hits);
}

GriddedDistribution GriddedDistribution::gaussian(const UniformGrid& grid, double mu,
                                                  double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma <= 0");
  return from_density(grid, [mu, sigma](double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z);
  });
}

GriddedDistribution GriddedDistribution::from_density(
    const UniformGrid& grid, const std::function<double(double)>& density, bool renormalize) {
  RVec m(grid.count);
  for (int i = 0; i < grid.count; ++i) m[i] = density(grid.node(i)) * grid.step;
  return GriddedDistribution(grid, std::move(m), renormalize);
}

double GriddedDistribution::total_mass() const {
  return pairwise_sum(std::span<const double>(masses_.data(), masses_.size()));
}

double GriddedDistribution::mean() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += masses_[i] * grid_.node(i);
  return s;
}

IntegerDistribution::IntegerDistribution(int support_offset, RVec probs, bool renormalize)
    : offset_(support_offset), probs_(std::move(probs)) {
  if (probs_.size() == 0) throw std::invalid_argument("IntegerDistribution: empty");
  for (int i = 0; i < probs_.size(); ++i) {
    if (probs_[i] < 0) {
      if (probs_[i] > -1e-15) {
        probs_[i] = 0.0;
      } else {
        throw std::invalid_argument("IntegerDistribution: negative probability");
      }
    }
  }
  const double total = pairwise_sum(std::span<const double>(probs_.data(), probs_.size()));
  if (renormalize) {
    if (total <= 0) throw std::invalid_argument("IntegerDistribution: zero total");
    probs_ /= total;
  } else if (std::abs(total - 1.0) > kIntTol) {
    throw std::invalid_argument("IntegerDistribution: total " + std::to_string(total) +
                                " not within 1e-12 of 1");
  }
}

double IntegerDistribution::mean_abs(double ref) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += probs_[i] * std::abs(value(i) - ref);
  return s;
}

double shannon_entropy(const IntegerDistribution& d) {
  return shannon_entropy(d.probs());
}

double shannon_entropy(const RVec& probs) {
  std::vector<double> terms(probs.size());
  for (int i = 0; i < probs.size(); ++i) terms[i] = neg_p_ln_p(probs[i]);
  return pairwise_sum(terms);
}

double differential_entropy(const GriddedDistribution& d) {
  return shannon_entropy(d.masses()) + std::log(d.grid().step);
}

double rms_deviation(const GriddedDistribution& d, double center) {
  double s = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    const double dev = d.grid().wrap_centered(d.grid().node(i) - center);
    s += d.mass(i) * dev * dev;
  }
  return std::sqrt(s);
}

double mean_abs_deviation(const std::vector<double>& values, const std::vector<double>& probs,
                          double ref) {
  if (values.size() != probs.size()) {
    throw std::invalid_argument("mean_abs_deviation: size mismatch");
  }
  double total = 0.0, s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += probs[i];
    s += probs[i] * std::abs(values[i] - ref);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mean_abs_deviation: probs not normalized");
  }
  return s;
}

double median(const std::vector<double>& values, const std::vector<double>& probs) {
  if (values.size() != probs.size() || values.empty()) {
    throw std::invalid_argument("median: bad inputs");
  }
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += probs[i];
    if (cum > 0.5 + 1e-12) return values[i];
  }
  return values[order.back()];
}

double fisher_information(const GriddedDistribution& d) {
  const int n = d.size();
  if (n < 3) return 0.0;
  const double h = d.grid().step;
  auto q = [&](int i) { return std::max(d.density(i), 1e-300); };
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double dlnq;
    if (i == 0) {
      dlnq = (std::log(q(1)) - std::log(q(0))) / h;
    } else if (i == n - 1) {
      dlnq = (std::log(q(n - 1)) - std::log(q(n - 2))) / h;
    } else {
      dlnq = (std::log(q(i + 1)) - std::log(q(i - 1))) / (2 * h);
    }
    s += d.mass(i) * dlnq * dlnq;
  }
  return s;
}

double total_variation(const GriddedDistribution& a, const GriddedDistribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::abs(a.mass(i) - b.mass(i));
  return 0.5 * s;
}

}  // namespace shiftbound
