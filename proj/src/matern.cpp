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

#include "tdesign/matern.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tdesign/special_functions.hpp"

namespace tdesign {

void MaternParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma) || !positive(nu) || !positive(kappa)) {
    throw std::invalid_argument("Matern parameters must be positive: sigma=" + std::to_string(sigma) +
                                " nu=" + std::to_string(nu) + " kappa=" + std::to_string(kappa));
  }
}

MaternKernel::MaternKernel(MaternParams params) : params_(params) {
  params_.validate();
  scale_ = std::pow(2.0, 1.0 - params_.nu) * params_.variance() / std::tgamma(params_.nu);
  inv_range_ = std::sqrt(2.0 * params_.nu) / params_.kappa;
}

double MaternKernel::operator()(double distance) const {
  if (distance <= 0.0) return params_.variance();
  const double z = distance * inv_range_;
  const double k = bessel_k(params_.nu, z);
  if (k == 0.0) return 0.0;
  return scale_ * std::pow(z, params_.nu) * k;
}

double matern_cov(double distance, const MaternParams& params) {
  return MaternKernel(params)(distance);
}

double matern_cov(const Point& xi, const Point& xj, const MaternParams& params) {
  return matern_cov(distance(xi, xj), params);
}

}  // namespace tdesign
