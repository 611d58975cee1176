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

#ifndef SHIFTBOUND_MAXENT_HPP
#define SHIFTBOUND_MAXENT_HPP

#include "shiftbound/distribution.hpp"

namespace shiftbound {

/// Largest Shannon entropy of an integer distribution with mean absolute
/// deviation nbar from a reference point: ln[sqrt(nbar^2+1)+nbar] + x/sinh x
/// with sinh x = 1/nbar. Satisfies <= ln(2 nbar + 1) + 1.
double max_entropy_integer(double nbar);

/// Cap for spectra bounded below: ln(nbar + 1) + 1.
double max_entropy_integer_bounded(double nbar);

/// Continuous-spectrum cap: ln(2 gbar) + 1, attained by the two-sided
/// exponential density.
double max_entropy_continuous(double gbar);

/// The maximizing integer distribution q_n = A v^|n| on |n| <= halfwidth,
/// with A = (1-v)/(1+v) and v = sqrt(1 + 1/nbar^2) - 1/nbar. Errors if the
/// truncated tail mass exceeds 1e-12.
IntegerDistribution two_sided_geometric(double nbar, int halfwidth);

/// Independent maximizer: maximize -sum p ln p over {p_n, |n| <= halfwidth}
/// subject to sum p = 1 and sum |n| p = nbar, by bisection on the exponential
/// dual family (the constraint residual is driven below 1e-10). Used as the
/// oracle for max_entropy_integer.
double brute_force_max_entropy(double nbar, int halfwidth);

}  // namespace shiftbound

#endif  // SHIFTBOUND_MAXENT_HPP
