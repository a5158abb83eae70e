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

#include "tdesign/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tdesign {
namespace {

void check_field(std::span<const double> field, const Grid& grid) {
  if (field.size() != grid.size()) throw std::invalid_argument("field size does not match the grid");
}

double mean_nearest(const LevelSet& from, const LevelSet& to, const Grid& grid) {
  double total = 0.0;
  for (std::size_t a : from.points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b : to.points) best = std::min(best, grid.distance(a, b));
    total += best;
  }
  return total / static_cast<double>(from.size());
}

double mean_abs_gap(std::span<const double> field, const LevelSet& set, double threshold) {
  double total = 0.0;
  for (std::size_t x : set.points) total += std::abs(field[x] - threshold);
  return total / static_cast<double>(set.size());
}

}  // namespace

LevelSet extract_level_set(std::span<const double> field, const Grid& grid, double threshold) {
  check_field(field, grid);
  LevelSet set;
  set.threshold = threshold;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const double gap = field[x] - threshold;
    bool member = gap == 0.0;
    if (!member) {
      for (std::size_t y : grid.neighbours4(x)) {
        const double other = field[y] - threshold;
        if (gap * other < 0.0 && std::abs(gap) <= std::abs(other)) {
          member = true;
          break;
        }
      }
    }
    if (member) set.points.push_back(x);
  }
  return set;
}

std::vector<std::vector<std::size_t>> level_set_components(const LevelSet& set, const Grid& grid) {
  std::vector<char> in(grid.size(), 0);
  std::vector<char> seen(grid.size(), 0);
  for (std::size_t x : set.points) in[x] = 1;
  std::vector<std::vector<std::size_t>> components;
  const auto side = static_cast<long>(grid.side());
  for (std::size_t start : set.points) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      const auto r = static_cast<long>(grid.row(x));
      const auto c = static_cast<long>(grid.col(x));
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          const long rr = r + dr;
          const long cc = c + dc;
          if ((dr == 0 && dc == 0) || rr < 0 || cc < 0 || rr >= side || cc >= side) continue;
          const std::size_t y = grid.index(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
          if (in[y] && !seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

std::optional<double> q_dist(const LevelSet& actual, const LevelSet& estimated, const Grid& grid) {
  if (actual.empty() || estimated.empty()) return std::nullopt;
  return 0.5 * (mean_nearest(actual, estimated, grid) + mean_nearest(estimated, actual, grid));
}

std::optional<ValueComponents> q_value_components(std::span<const double> actual_field,
                                                  std::span<const double> estimated_field, const LevelSet& actual,
                                                  const LevelSet& estimated, double threshold) {
  if (actual_field.size() != estimated_field.size()) throw std::invalid_argument("field sizes differ");
  if (actual.empty() || estimated.empty()) return std::nullopt;
  return ValueComponents{mean_abs_gap(actual_field, estimated, threshold),
                         mean_abs_gap(estimated_field, actual, threshold)};
}

std::optional<double> q_value(std::span<const double> actual_field, std::span<const double> estimated_field,
                              const LevelSet& actual, const LevelSet& estimated, double threshold) {
  const auto parts = q_value_components(actual_field, estimated_field, actual, estimated, threshold);
  if (!parts) return std::nullopt;
  return 0.5 * (parts->estimated + parts->actual);
}

double q_area(std::span<const double> actual_field, std::span<const double> estimated_field, double threshold) {
  if (actual_field.size() != estimated_field.size()) throw std::invalid_argument("field sizes differ");
  if (actual_field.empty()) throw std::invalid_argument("q_area: empty fields");
  std::size_t wrong = 0;
  for (std::size_t x = 0; x < actual_field.size(); ++x) {
    const double y = actual_field[x];
    const double yhat = estimated_field[x];
    if ((yhat < threshold && y > threshold) || (yhat > threshold && y < threshold)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(actual_field.size());
}

QualityScores quality_scores(std::span<const double> actual_field, std::span<const double> estimated_field,
                             const Grid& grid, double threshold) {
  check_field(actual_field, grid);
  check_field(estimated_field, grid);
  const LevelSet actual = extract_level_set(actual_field, grid, threshold);
  const LevelSet estimated = extract_level_set(estimated_field, grid, threshold);
  return {q_dist(actual, estimated, grid), q_value(actual_field, estimated_field, actual, estimated, threshold),
          q_area(actual_field, estimated_field, threshold)};
}

}  // namespace tdesign
