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

#include "virtual_factor.hpp"

#include <cmath>
#include <string>

#include "tdesign/errors.hpp"

namespace tdesign::detail {

VirtualFactor::VirtualFactor(const MetaModel& model)
    : model_(&model), grid_size_(model.grid().size()), variance_(model.variance()) {}

void VirtualFactor::reset() {
  rows_.clear();
  points_.clear();
  variance_ = model_->variance();
}

void VirtualFactor::cov_row(std::size_t e, std::span<double> out) const {
  model_->conditional_cov_row(e, out);
  const std::size_t g = grid_size_;
  for (std::size_t l = 0; l < points_.size(); ++l) {
    const double* row = rows_.data() + l * g;
    const double re = row[e];
    if (re == 0.0) continue;
    for (std::size_t x = 0; x < g; ++x) out[x] -= row[x] * re;
  }
}

void rank_one_variance(const VirtualFactor& factor, std::size_t e, std::span<const double> cov_row, double jitter,
                       std::span<double> out) {
  const double pivot = MetaModel::regularize_pivot(cov_row[e], jitter);
  if (std::isnan(pivot)) {
    Design d(factor.points());
    d.points.push_back(e);
    throw NumericalError("covariance of design " + to_string(d) + " is not positive definite after jitter");
  }
  const double inv = 1.0 / pivot;
  const Field& base = factor.variance();
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = MetaModel::clamp_variance(base[x] - cov_row[x] * cov_row[x] * inv, x);
  }
}

void VirtualFactor::add(std::size_t e) {
  const std::size_t g = grid_size_;
  const std::size_t offset = rows_.size();
  rows_.resize(offset + g);
  std::span<double> row(rows_.data() + offset, g);
  cov_row(e, row);
  const double pivot = MetaModel::regularize_pivot(row[e], model_->jitter());
  if (std::isnan(pivot)) {
    rows_.resize(offset);
    Design d(points_);
    d.points.push_back(e);
    throw NumericalError("covariance of design " + to_string(d) + " is not positive definite after jitter");
  }
  const double scale = 1.0 / std::sqrt(pivot);
  for (std::size_t x = 0; x < g; ++x) {
    row[x] *= scale;
    variance_[x] = MetaModel::clamp_variance(variance_[x] - row[x] * row[x], x);
  }
  points_.push_back(e);
}

}  // namespace tdesign::detail
