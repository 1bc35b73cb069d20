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

#ifndef MMWSIM_LINALG_HPP
#define MMWSIM_LINALG_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "core/units.hpp"

namespace mmwsim {

/// Dense row-major complex matrix. Sized for this simulator's needs
/// (effective channels are 16 x K with K <= 12).
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {d_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {d_.data() + r * cols_, cols_}; }

  std::span<const cplx> data() const { return d_; }
  std::span<cplx> data() { return d_; }

  bool operator==(const CMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> d_;
};

/// Thrown by lstsq_solve when the coefficient matrix is (numerically)
/// rank deficient. `column` is the offending pivot column.
struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(std::size_t col)
      : std::runtime_error("rank-deficient matrix at pivot column " + std::to_string(col)),
        column(col) {}
  std::size_t column;
};

/// Least-squares solve of min ||A x - y|| via Householder QR (m >= n).
/// For full-column-rank A this equals (A^H A)^{-1} A^H y.
std::vector<cplx> lstsq_solve(const CMat& a, std::span<const cplx> y);

}  // namespace mmwsim

#endif  // MMWSIM_LINALG_HPP
