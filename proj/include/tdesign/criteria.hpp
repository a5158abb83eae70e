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
#include <optional>
#include <span>
#include <string>

#include "tdesign/grid.hpp"
#include "tdesign/meta_model.hpp"

namespace tdesign {

enum class WeightKind { LevelSet, LevelSetPrinted, Exceedance, SmoothedReference };
enum class Aggregator { Max, Integrated };
enum class LevelSetVariant { PValue, Printed };

/// Target-area weight. sigma_eps_sq is the smoothing parameter of the
/// reference weight; with calibrate_sigma_eps set it is re-derived from the
/// current mean field (see resolve()).
struct WeightSpec {
  WeightKind kind = WeightKind::LevelSet;
  double threshold = 0.0;
  std::optional<double> sigma_eps_sq;
  bool calibrate_sigma_eps = false;

  void validate() const;
  /// Copy with sigma_eps_sq filled in from mean when calibration is requested.
  WeightSpec resolve(std::span<const double> mean) const;
};

struct CriterionSpec {
  WeightSpec weight;
  Aggregator aggregator = Aggregator::Max;

  CriterionSpec resolve(std::span<const double> mean) const { return {weight.resolve(mean), aggregator}; }
};

/// Two-sided level-set weight. PValue: 2(1 - F(|mu - T| / sigma)).
/// Printed: 2|1/2 - F((mu - T) / sigma)|; the two sum to one.
double weight_ls(double mu, double sigma, double threshold, LevelSetVariant variant = LevelSetVariant::PValue);

/// Exceedance weight F((mu - T) / sigma).
double weight_exc(double mu, double sigma, double threshold);

/// Gaussian reference weight with smoothing parameter sigma_eps_sq. Throws
/// NumericalError when var + sigma_eps_sq == 0 (the weight is unbounded).
double weight_W(double mu, double var, double threshold, double sigma_eps_sq);

/// Weight of spec at a point with posterior mean mu and variance var.
double weight(const WeightSpec& spec, double mu, double var);

/// c(x; d) = w(x) Var(y(x) | d).
double weighted_variance(std::size_t x, const PosteriorSummary& posterior, const WeightSpec& spec);

/// Max or sum over the grid of c(x; d).
double criterion_value(const PosteriorSummary& posterior, const CriterionSpec& spec);
double criterion_value(std::span<const double> mean, std::span<const double> variance, const CriterionSpec& spec);

/// (max - min) / 20 of the mean field.
double calibrate_sigma_eps(std::span<const double> mean);

std::string to_string(WeightKind kind);
std::string to_string(Aggregator agg);

/// Short criterion label such as "mc_ls" or "ic_exc".
std::string criterion_label(const CriterionSpec& spec);

}  // namespace tdesign
