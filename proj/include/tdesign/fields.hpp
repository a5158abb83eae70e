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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdesign/grid.hpp"
#include "tdesign/matern.hpp"

namespace tdesign {

/// Named analytic formula with numeric parameters. Registered names:
///
///   elliptic_exp  scale * exp(-sqrt((x1-c1)^2 + aspect (x2-c2)^2) / rate)
///                 defaults scale=2 c1=1 c2=0.5 aspect=3 rate=3
///   plane         offset + a1 x1 + a2 x2
///   bump          offset + amplitude exp(-|x-c|^2 / (2 width^2))
///   two_bumps     offset + sum_k amplitude_k exp(-|x-c_k|^2 / (2 width_k^2)), k = 1, 2
///
/// Unknown parameters are rejected; missing ones take their defaults.
struct AnalyticSpec {
  std::string name;
  std::map<std::string, double> params;
};

std::vector<std::string> analytic_names();
Field analytic_field(const AnalyticSpec& spec, const Grid& grid);

/// Parameters of a seeded sum of Gaussian bumps on a constant background.
struct BumpField {
  double offset = 0.0;
  struct Bump {
    Point centre;
    double amplitude = 1.0;
    double width = 0.1;
  };
  std::vector<Bump> bumps;

  Field evaluate(const Grid& grid) const;
};

/// `count` bumps with centres in [0.15, 0.85]^2 at least 0.45 apart, widths
/// in [0.07, 0.12], amplitudes in [0.9, 1.3], background 0.2.
BumpField random_bumps(std::size_t count, std::uint64_t seed);

/// Sample of the zero-mean Matern field plus mean, by dense Cholesky.
/// Limited to grids with at most kMaxGpSampleSize points.
inline constexpr std::size_t kMaxGpSampleSize = 6400;
Field gp_sample(const Grid& grid, const Field& mean, const MaternParams& kernel, std::uint64_t seed);

}  // namespace tdesign
