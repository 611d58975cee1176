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

#include "shiftbound/maxent.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftbound {

double max_entropy_integer(double nbar) {
  if (!(nbar > 0)) throw std::invalid_argument("max_entropy_integer: nbar must be > 0");
  const double x = std::asinh(1.0 / nbar);
  const double h = std::log(std::sqrt(nbar * nbar + 1.0) + nbar) + x * nbar;
  const double cap = std::log(2.0 * nbar + 1.0) + 1.0;
  if (h > cap + 1e-12) {
    throw std::logic_error("max_entropy_integer: closed form exceeds its cap");
  }
  return h;
}

double max_entropy_integer_bounded(double nbar) {
  if (nbar < 0) throw std::invalid_argument("max_entropy_integer_bounded: nbar must be >= 0");
  return std::log(nbar + 1.0) + 1.0;
}

double max_entropy_continuous(double gbar) {
  if (!(gbar > 0)) throw std::invalid_argument("max_entropy_continuous: gbar must be > 0");
  return std::log(2.0 * gbar) + 1.0;
}

IntegerDistribution two_sided_geometric(double nbar, int halfwidth) {
  if (!(nbar > 0)) throw std::invalid_argument("two_sided_geometric: nbar must be > 0");
  if (halfwidth < 1) throw std::invalid_argument("two_sided_geometric: halfwidth < 1");
  const double v = std::sqrt(1.0 + 1.0 / (nbar * nbar)) - 1.0 / nbar;
  const double a = (1.0 - v) / (1.0 + v);
  // Tail mass beyond |n| = halfwidth: 2 A v^{hw+1} / (1 - v).
  const double tail = 2.0 * a * std::pow(v, halfwidth + 1) / (1.0 - v);
  if (tail > 1e-12) {
    throw std::invalid_argument("two_sided_geometric: halfwidth too small (tail mass " +
                                std::to_string(tail) + ")");
  }
  RVec p(2 * halfwidth + 1);
  for (int n = -halfwidth; n <= halfwidth; ++n) {
    p[n + halfwidth] = a * std::pow(v, std::abs(n));
  }
  return IntegerDistribution(-halfwidth, std::move(p), /*renormalize=*/true);
}

namespace {

// Exponential family member p_n proportional to exp(-beta |n|) on |n| <= hw,
// returned with its mean |n|.
struct DualPoint {
  RVec probs;
  double mean_abs;
};

DualPoint dual_distribution(double beta, int hw) {
  RVec w(2 * hw + 1);
  // Shift the exponent to avoid overflow when beta < 0.
  const double shift = beta < 0 ? -beta * hw : 0.0;
  for (int n = -hw; n <= hw; ++n) {
    w[n + hw] = std::exp(-beta * std::abs(n) - shift);
  }
  const double z = w.sum();
  w /= z;
  double m = 0.0;
  for (int n = -hw; n <= hw; ++n) m += w[n + hw] * std::abs(n);
  return DualPoint{std::move(w), m};
}

}  // namespace

double brute_force_max_entropy(double nbar, int halfwidth) {
  if (halfwidth < 1) throw std::invalid_argument("brute_force_max_entropy: halfwidth < 1");
  if (nbar < 0 || nbar > halfwidth + 1e-12) {
    throw std::invalid_argument("brute_force_max_entropy: infeasible nbar");
  }
  if (nbar < 1e-14) return 0.0;  // point mass at 0
  if (nbar > halfwidth - 1e-12) return std::log(2.0);  // mass split on +-halfwidth

  // mean_abs(beta) is strictly decreasing; bracket and bisect.
  double lo = -1.0, hi = 1.0;
  while (dual_distribution(lo, halfwidth).mean_abs < nbar) lo *= 2.0;
  while (dual_distribution(hi, halfwidth).mean_abs > nbar) hi *= 2.0;
  DualPoint best = dual_distribution(0.5 * (lo + hi), halfwidth);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    best = dual_distribution(mid, halfwidth);
    const double resid = best.mean_abs - nbar;
    if (std::abs(resid) < 1e-10) break;
    if (resid > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return shannon_entropy(best.probs);
}

}  // namespace shiftbound
