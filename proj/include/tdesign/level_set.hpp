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
#include <vector>

#include "tdesign/grid.hpp"

namespace tdesign {

/// Discrete level set: sorted grid indices.
struct LevelSet {
  std::vector<std::size_t> points;
  double threshold = 0.0;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

/// x is a member when field(x) == T, or when some 4-neighbour x' lies on
/// the other side of T and x is the nearer side of that crossing
/// (|field(x) - T| <= |field(x') - T|; equal gaps keep both points).
LevelSet extract_level_set(std::span<const double> field, const Grid& grid, double threshold);

/// Connected components of a level set under 8-connectivity, each sorted.
std::vector<std::vector<std::size_t>> level_set_components(const LevelSet& set, const Grid& grid);

/// Symmetrised mean nearest-neighbour distance in unit-square coordinates.
/// Empty when either set is empty.
std::optional<double> q_dist(const LevelSet& actual, const LevelSet& estimated, const Grid& grid);

struct ValueComponents {
  double estimated = 0.0;  // mean |y(x) - T| over the estimated set
  double actual = 0.0;     // mean |yhat(x) - T| over the actual set
};

std::optional<ValueComponents> q_value_components(std::span<const double> actual_field,
                                                  std::span<const double> estimated_field, const LevelSet& actual,
                                                  const LevelSet& estimated, double threshold);

std::optional<double> q_value(std::span<const double> actual_field, std::span<const double> estimated_field,
                              const LevelSet& actual, const LevelSet& estimated, double threshold);

/// Fraction of grid points classified on opposite strict sides of T.
double q_area(std::span<const double> actual_field, std::span<const double> estimated_field, double threshold);

struct QualityScores {
  std::optional<double> q_dist;
  std::optional<double> q_value;
  double q_area = 0.0;
};

QualityScores quality_scores(std::span<const double> actual_field, std::span<const double> estimated_field,
                             const Grid& grid, double threshold);

}  // namespace tdesign
