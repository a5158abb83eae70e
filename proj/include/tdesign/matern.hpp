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

#include "tdesign/grid.hpp"

namespace tdesign {

struct MaternParams {
  double sigma = 1.0;  // marginal standard deviation
  double nu = 0.5;     // smoothness
  double kappa = 1.0;  // range

  void validate() const;
  double variance() const { return sigma * sigma; }
};

/// Matern covariance as a function of Euclidean distance; the zero-distance
/// limit sigma^2 is returned explicitly.
class MaternKernel {
 public:
  explicit MaternKernel(MaternParams params);

  const MaternParams& params() const { return params_; }
  double operator()(double distance) const;

 private:
  MaternParams params_;
  double scale_;       // 2^{1-nu} sigma^2 / Gamma(nu)
  double inv_range_;   // sqrt(2 nu) / kappa
};

double matern_cov(const Point& xi, const Point& xj, const MaternParams& params);
double matern_cov(double distance, const MaternParams& params);

}  // namespace tdesign
