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

#include "tdesign/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tdesign/errors.hpp"
#include "tdesign/special_functions.hpp"

namespace tdesign {

void WeightSpec::validate() const {
  if (!std::isfinite(threshold)) throw std::invalid_argument("threshold must be finite");
  const bool reference = kind == WeightKind::SmoothedReference;
  if (!reference && (sigma_eps_sq || calibrate_sigma_eps)) {
    throw std::invalid_argument("sigma_eps only applies to the smoothed_reference weight");
  }
  if (reference && !sigma_eps_sq && !calibrate_sigma_eps) {
    throw std::invalid_argument("smoothed_reference weight needs sigma_eps (a value or \"auto\")");
  }
  if (sigma_eps_sq && !(*sigma_eps_sq >= 0.0 && std::isfinite(*sigma_eps_sq))) {
    throw std::invalid_argument("sigma_eps must be a finite non-negative number");
  }
}

WeightSpec WeightSpec::resolve(std::span<const double> mean) const {
  WeightSpec out = *this;
  if (kind == WeightKind::SmoothedReference && calibrate_sigma_eps) out.sigma_eps_sq = tdesign::calibrate_sigma_eps(mean);
  return out;
}

double weight_ls(double mu, double sigma, double threshold, LevelSetVariant variant) {
  if (sigma < 0.0) throw std::invalid_argument("weight_ls: sigma must be non-negative");
  const double gap = mu - threshold;
  if (sigma == 0.0) {
    const bool on_level = gap == 0.0;
    if (variant == LevelSetVariant::Printed) return on_level ? 0.0 : 1.0;
    return on_level ? 1.0 : 0.0;
  }
  const double z = std::abs(gap) / sigma;
  // 2(1 - F(z)) = erfc(z / sqrt 2), without the cancellation of 1 - F.
  const double pvalue = std::erfc(z / std::numbers::sqrt2);
  if (variant == LevelSetVariant::PValue) return pvalue;
  return 2.0 * std::abs(0.5 - normal_cdf(gap / sigma));
}

double weight_exc(double mu, double sigma, double threshold) {
  if (sigma < 0.0) throw std::invalid_argument("weight_exc: sigma must be non-negative");
  const double gap = mu - threshold;
  if (sigma == 0.0) {
    if (gap > 0.0) return 1.0;
    if (gap < 0.0) return 0.0;
    return 0.5;
  }
  return normal_cdf(gap / sigma);
}

double weight_W(double mu, double var, double threshold, double sigma_eps_sq) {
  if (var < 0.0 || sigma_eps_sq < 0.0) throw std::invalid_argument("weight_W: variances must be non-negative");
  const double s2 = sigma_eps_sq + var;
  if (s2 == 0.0) {
    throw NumericalError("smoothed reference weight is unbounded: sigma_eps^2 + Var(y(x)|d) = 0");
  }
  const double gap = mu - threshold;
  return std::exp(-gap * gap / (2.0 * s2)) / std::sqrt(2.0 * std::numbers::pi * s2);
}

double weight(const WeightSpec& spec, double mu, double var) {
  switch (spec.kind) {
    case WeightKind::LevelSet:
      return weight_ls(mu, std::sqrt(var), spec.threshold, LevelSetVariant::PValue);
    case WeightKind::LevelSetPrinted:
      return weight_ls(mu, std::sqrt(var), spec.threshold, LevelSetVariant::Printed);
    case WeightKind::Exceedance:
      return weight_exc(mu, std::sqrt(var), spec.threshold);
    case WeightKind::SmoothedReference:
      if (!spec.sigma_eps_sq) throw std::logic_error("smoothed reference weight used before sigma_eps was resolved");
      return weight_W(mu, var, spec.threshold, *spec.sigma_eps_sq);
  }
  throw std::logic_error("unknown weight kind");
}

double weighted_variance(std::size_t x, const PosteriorSummary& posterior, const WeightSpec& spec) {
  if (x >= posterior.mean.size()) throw std::out_of_range("grid index out of range");
  const double var = posterior.variance[x];
  return weight(spec, posterior.mean[x], var) * var;
}

double criterion_value(std::span<const double> mean, std::span<const double> variance, const CriterionSpec& spec) {
  if (mean.size() != variance.size()) throw std::invalid_argument("mean and variance fields differ in size");
  if (spec.weight.calibrate_sigma_eps && !spec.weight.sigma_eps_sq) {
    return criterion_value(mean, variance, spec.resolve(mean));
  }
  double acc = spec.aggregator == Aggregator::Max ? -std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t x = 0; x < mean.size(); ++x) {
    const double c = weight(spec.weight, mean[x], variance[x]) * variance[x];
    if (spec.aggregator == Aggregator::Max) {
      acc = std::max(acc, c);
    } else {
      acc += c;
    }
  }
  return acc;
}

double criterion_value(const PosteriorSummary& posterior, const CriterionSpec& spec) {
  return criterion_value(posterior.mean, posterior.variance, spec);
}

double calibrate_sigma_eps(std::span<const double> mean) {
  if (mean.empty()) throw std::invalid_argument("calibrate_sigma_eps: empty field");
  const auto [lo, hi] = std::minmax_element(mean.begin(), mean.end());
  return (*hi - *lo) / 20.0;
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::LevelSet: return "level_set";
    case WeightKind::LevelSetPrinted: return "level_set_printed";
    case WeightKind::Exceedance: return "exceedance";
    case WeightKind::SmoothedReference: return "smoothed_reference";
  }
  return "?";
}

std::string to_string(Aggregator agg) { return agg == Aggregator::Max ? "max" : "integrated"; }

std::string criterion_label(const CriterionSpec& spec) {
  std::string prefix = spec.aggregator == Aggregator::Max ? "mc_" : "ic_";
  switch (spec.weight.kind) {
    case WeightKind::LevelSet: return prefix + "ls";
    case WeightKind::LevelSetPrinted: return prefix + "ls_printed";
    case WeightKind::Exceedance: return prefix + "exc";
    case WeightKind::SmoothedReference: return prefix + "w";
  }
  return prefix;
}

}  // namespace tdesign
