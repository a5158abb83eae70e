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

#include "tdesign/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tdesign {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x1 - b.x1, a.x2 - b.x2);
}

Grid::Grid(std::size_t n_side)
    : n_side_(n_side), spacing_(n_side > 1 ? 1.0 / static_cast<double>(n_side - 1) : 0.0) {
  if (n_side == 0) throw std::invalid_argument("grid side must be positive");
}

Point Grid::point(std::size_t index) const {
  return {static_cast<double>(row(index)) * spacing_, static_cast<double>(col(index)) * spacing_};
}

double Grid::distance(std::size_t a, std::size_t b) const {
  const double di = static_cast<double>(row(a)) - static_cast<double>(row(b));
  const double dj = static_cast<double>(col(a)) - static_cast<double>(col(b));
  return std::hypot(di, dj) * spacing_;
}

std::vector<std::size_t> Grid::neighbours4(std::size_t index) const {
  std::vector<std::size_t> out;
  out.reserve(4);
  const std::size_t r = row(index);
  const std::size_t c = col(index);
  if (r > 0) out.push_back(index - n_side_);
  if (r + 1 < n_side_) out.push_back(index + n_side_);
  if (c > 0) out.push_back(index - 1);
  if (c + 1 < n_side_) out.push_back(index + 1);
  return out;
}

}  // namespace tdesign
