// SPDX-License-Identifier: Apache-2.0
//
// mmwsim - link-level simulator for a 28 GHz hybrid-beamforming massive MIMO base station
// Copyright (C) 2026 the mmwsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "core/linalg.hpp"

#include <cmath>

namespace mmwsim {

std::vector<cplx> lstsq_solve(const CMat& a, std::span<const cplx> y) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("lstsq_solve: empty matrix");
  if (m < n) throw std::invalid_argument("lstsq_solve: underdetermined system");
  if (y.size() != m) throw std::invalid_argument("lstsq_solve: rhs length mismatch");

  CMat r = a;
  std::vector<cplx> b(y.begin(), y.end());

  double scale = 0.0;
  for (const auto& v : r.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw SingularMatrixError(0);
  const double tol = 1e-12 * scale * static_cast<double>(m);

  std::vector<cplx> v(m);
  for (std::size_t k = 0; k < n; ++k) {
    double colnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) colnorm2 += std::norm(r(i, k));
    const double colnorm = std::sqrt(colnorm2);
    if (colnorm <= tol) throw SingularMatrixError(k);

    const cplx akk = r(k, k);
    const double aabs = std::abs(akk);
    const cplx phase = (aabs > 0.0) ? akk / aabs : cplx(1.0, 0.0);
    const cplx beta = -phase * colnorm;

    v[k] = akk - beta;
    double vnorm2 = std::norm(v[k]);
    for (std::size_t i = k + 1; i < m; ++i) {
      v[i] = r(i, k);
      vnorm2 += std::norm(v[i]);
    }

    r(k, k) = beta;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;

    if (vnorm2 > 0.0) {
      const double two_over = 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) {
        cplx dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * r(i, j);
        dot *= two_over;
        for (std::size_t i = k; i < m; ++i) r(i, j) -= v[i] * dot;
      }
      cplx dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * b[i];
      dot *= two_over;
      for (std::size_t i = k; i < m; ++i) b[i] -= v[i] * dot;
    }
  }

  std::vector<cplx> x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    cplx acc = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) acc -= r(kk, j) * x[j];
    x[kk] = acc / r(kk, kk);
  }
  return x;
}

}  // namespace mmwsim
