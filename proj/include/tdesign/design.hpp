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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tdesign/grid.hpp"

namespace tdesign {

/// Ordered set of distinct grid indices.
struct Design {
  std::vector<std::size_t> points;

  Design() = default;
  explicit Design(std::vector<std::size_t> pts) : points(std::move(pts)) {}
  Design(std::initializer_list<std::size_t> pts) : points(pts) {}

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool contains(std::size_t index) const;
  std::span<const std::size_t> view() const { return points; }

  /// Throws std::invalid_argument on duplicates or out-of-grid indices.
  void validate(const Grid& grid) const;

  bool operator==(const Design&) const = default;
};

std::string to_string(const Design& d);

/// Minimum pairwise distance; +inf for fewer than two points.
double min_pairwise_distance(const Design& d, const Grid& grid);

}  // namespace tdesign
