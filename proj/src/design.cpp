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

#include "tdesign/design.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tdesign {

bool Design::contains(std::size_t index) const {
  return std::find(points.begin(), points.end(), index) != points.end();
}

void Design::validate(const Grid& grid) const {
  std::vector<std::size_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("design has duplicate points: " + to_string(*this));
  }
  if (!sorted.empty() && !grid.contains(sorted.back())) {
    throw std::invalid_argument("design point " + std::to_string(sorted.back()) +
                                " is outside the " + std::to_string(grid.side()) + "x" +
                                std::to_string(grid.side()) + " grid");
  }
}

std::string to_string(const Design& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(d.points[i]);
  }
  return s + "}";
}

double min_pairwise_distance(const Design& d, const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      best = std::min(best, grid.distance(d.points[i], d.points[j]));
  return best;
}

}  // namespace tdesign
