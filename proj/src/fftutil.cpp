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

#include "shiftbound/fftutil.hpp"

#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace shiftbound {

std::vector<cplx> dft(const std::vector<cplx>& f) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, f);
  return out;
}

std::vector<cplx> idft(const std::vector<cplx>& f) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, f);
  return out;
}

std::vector<cplx> circular_correlation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("circular_correlation: size mismatch");
  }
  const std::size_t n = a.size();
  // C(y) = sum_x a(x) b(x+y)  <=>  C^ = conj(F[conj(a)]) .* F[b]
  std::vector<cplx> ac(n);
  for (std::size_t i = 0; i < n; ++i) ac[i] = std::conj(a[i]);
  std::vector<cplx> fa = dft(ac);
  std::vector<cplx> fb = dft(b);
  for (std::size_t k = 0; k < n; ++k) fa[k] = std::conj(fa[k]) * fb[k];
  return idft(fa);
}

std::vector<cplx> linear_correlation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.size() < a.size()) {
    throw std::invalid_argument("linear_correlation: need |b| >= |a| > 0");
  }
  const std::size_t out_len = b.size() - a.size() + 1;
  // Zero-pad both to a common circular length and reuse the circular path.
  std::size_t n = 1;
  while (n < b.size() + a.size()) n <<= 1;
  std::vector<cplx> ap(n, cplx(0, 0)), bp(n, cplx(0, 0));
  std::copy(a.begin(), a.end(), ap.begin());
  std::copy(b.begin(), b.end(), bp.begin());
  std::vector<cplx> full = circular_correlation(ap, bp);
  return std::vector<cplx>(full.begin(), full.begin() + out_len);
}

}  // namespace shiftbound
