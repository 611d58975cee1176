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

#include "shiftbound/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftbound {

int UniformGrid::wrap_index(int i) const {
  int r = i % count;
  return r < 0 ? r + count : r;
}

double UniformGrid::wrap_centered(double y) const {
  if (!periodic) return y;
  const double p = period();
  double r = std::fmod(y, p);
  if (r <= -p / 2) r += p;
  if (r > p / 2) r -= p;
  return r;
}

int UniformGrid::nearest_index(double x) const {
  double u = (x - start) / step;
  long k = std::lround(u);
  if (periodic) {
    long r = k % count;
    return static_cast<int>(r < 0 ? r + count : r);
  }
  if (k < 0) k = 0;
  if (k >= count) k = count - 1;
  return static_cast<int>(k);
}

bool UniformGrid::same_step(const UniformGrid& other, double tol) const {
  return std::abs(step - other.step) <= tol * std::max(step, other.step);
}

UniformGrid UniformGrid::circle(int count) {
  return periodic_interval(2.0 * std::numbers::pi, count);
}

UniformGrid UniformGrid::periodic_interval(double period, int count) {
  if (count < 1 || period <= 0) {
    throw std::invalid_argument("UniformGrid: bad periodic interval");
  }
  return UniformGrid{0.0, period / count, count, true};
}

UniformGrid UniformGrid::interval(double a, double b, int count) {
  if (count < 1 || !(b > a)) {
    throw std::invalid_argument("UniformGrid: bad interval");
  }
  const double step = (b - a) / count;
  return UniformGrid{a + 0.5 * step, step, count, false};
}

void validate(const UniformGrid& g) {
  if (g.count < 1) throw std::invalid_argument("UniformGrid: count < 1");
  if (!(g.step > 0)) throw std::invalid_argument("UniformGrid: step <= 0");
}

}  // namespace shiftbound
