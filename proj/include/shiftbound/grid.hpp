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

#ifndef SHIFTBOUND_GRID_HPP
#define SHIFTBOUND_GRID_HPP

namespace shiftbound {

/// Uniform sampling grid for parameter axes. Periodic grids identify
/// start and start + step*count (period = step*count); functions evaluated
/// on them are treated as periodic with that period.
struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  int count = 1;
  bool periodic = false;

  double period() const { return step * count; }
  double node(int i) const { return start + i * step; }
  double end() const { return start + step * count; }

  int wrap_index(int i) const;

  /// Reduce a deviation to the interval (-period/2, period/2].
  double wrap_centered(double y) const;

  /// Nearest node index (periodic grids wrap).
  int nearest_index(double x) const;

  bool same_step(const UniformGrid& other, double tol = 1e-12) const;

  /// N nodes over [0, 2pi), periodic.
  static UniformGrid circle(int count);
  /// N nodes over [0, period), periodic.
  static UniformGrid periodic_interval(double period, int count);
  /// Cell-midpoint nodes tiling [a, b], non-periodic.
  static UniformGrid interval(double a, double b, int count);
};

void validate(const UniformGrid& g);

}  // namespace shiftbound

#endif  // SHIFTBOUND_GRID_HPP
