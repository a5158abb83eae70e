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
#include <vector>

namespace tdesign {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

double distance(const Point& a, const Point& b);

/// N x N grid over [0,1]^2, endpoints included. Index i*N + j maps to
/// (x1, x2) = (i, j) / (N - 1); a 1 x 1 grid holds the single point (0, 0).
class Grid {
 public:
  explicit Grid(std::size_t n_side);

  std::size_t side() const { return n_side_; }
  std::size_t size() const { return n_side_ * n_side_; }
  double spacing() const { return spacing_; }

  std::size_t row(std::size_t index) const { return index / n_side_; }
  std::size_t col(std::size_t index) const { return index % n_side_; }
  std::size_t index(std::size_t row, std::size_t col) const { return row * n_side_ + col; }
  bool contains(std::size_t index) const { return index < size(); }

  Point point(std::size_t index) const;
  double distance(std::size_t a, std::size_t b) const;

  /// 4-neighbours (up, down, left, right) inside the grid.
  std::vector<std::size_t> neighbours4(std::size_t index) const;

  bool operator==(const Grid& other) const { return n_side_ == other.n_side_; }

 private:
  std::size_t n_side_;
  double spacing_;
};

/// Scalar field indexed on a grid, row-major.
using Field = std::vector<double>;

}  // namespace tdesign
