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

#ifndef SHIFTBOUND_FFTUTIL_HPP
#define SHIFTBOUND_FFTUTIL_HPP

#include <vector>

#include "shiftbound/linalg.hpp"

namespace shiftbound {

/// Circular correlation out[y] = sum_x a[x] * b[(x+y) mod N]. FFT-backed.
std::vector<cplx> circular_correlation(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Linear correlation out[y] = sum_x a[x] * b[x+y] for y = 0 .. |b|-|a|,
/// treating b as zero outside its range; requires |b| >= |a|.
std::vector<cplx> linear_correlation(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Forward DFT, F[k] = sum_n f[n] e^{-2 pi i k n / N}.
std::vector<cplx> dft(const std::vector<cplx>& f);
/// Inverse DFT (normalized by 1/N).
std::vector<cplx> idft(const std::vector<cplx>& f);

}  // namespace shiftbound

#endif  // SHIFTBOUND_FFTUTIL_HPP
