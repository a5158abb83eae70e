/*
 * Copyright 2026 The tdesign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdesign/criteria.hpp"
#include "tdesign/meta_model.hpp"

namespace tdesign::detail {

/// Virtual points stacked on a conditioned model as an incremental
/// (row-wise) Cholesky factor: row_l(x) = cov(x, e_l | model, e_1..e_{l-1})
/// / sqrt(pivot_l), so Var(y(x) | model, e_1..e_k) = model var(x) - sum_l row_l(x)^2.
class VirtualFactor {
 public:
  explicit VirtualFactor(const MetaModel& model);

  void reset();
  /// Appends e; throws NumericalError when its conditional variance plus
  /// jitter is not positive.
  void add(std::size_t e);

  /// out[x] = cov(x, e | model, current virtual points).
  void cov_row(std::size_t e, std::span<double> out) const;

  const Field& variance() const { return variance_; }
  const std::vector<std::size_t>& points() const { return points_; }

 private:
  const MetaModel* model_;
  std::size_t grid_size_;
  std::vector<double> rows_;
  std::vector<std::size_t> points_;
  Field variance_;
};

/// Variance field after adding e on top of factor, given the precomputed
/// covariance row; writes into out.
void rank_one_variance(const VirtualFactor& factor, std::size_t e, std::span<const double> cov_row, double jitter,
                       std::span<double> out);

}  // namespace tdesign::detail
