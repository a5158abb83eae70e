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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tdesign/criteria.hpp"
#include "tdesign/design_search.hpp"
#include "tdesign/grid.hpp"
#include "tdesign/matern.hpp"
#include "tdesign/sequential.hpp"

namespace tdesign {

inline constexpr int kConfigSchemaVersion = 1;

struct PlanConfig {
  std::optional<Design> initial_design;  // explicit indices
  std::size_t initial_maximin = 0;       // used when initial_design is empty
  std::vector<std::size_t> stage_sizes;
  OnePointRule one_point_rule = OnePointRule::ExactMinimum;
};

struct EfficiencyConfig {
  std::size_t random_designs = 50;
  bool include_maximin = true;
};

struct ScoresConfig {
  std::filesystem::path actual;
  std::filesystem::path estimated;
};

/// Fully validated scenario. `resolved` is the normalized JSON (defaults
/// filled in, paths absolute) written to run manifests; loading it again
/// reproduces this object.
struct ScenarioConfig {
  nlohmann::json resolved;

  std::size_t grid_side = 0;
  MaternParams kernel;
  Field prior_mean;
  std::optional<Field> truth;

  double threshold = 0.0;
  CriterionSpec criterion;
  std::vector<std::string> criteria;  // sweep labels, at least one

  std::size_t design_size = 0;
  SearchConfig search;
  std::optional<PlanConfig> plan;
  EfficiencyConfig efficiency;
  std::optional<ScoresConfig> scores;

  Grid grid() const { return Grid(grid_side); }
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::vector<std::string> criteria;
};

/// Parses and validates a scenario. The text may also be a run manifest, in
/// which case its embedded configuration is replayed. `source` names the
/// file in error messages; relative paths resolve against `base_dir`.
ScenarioConfig parse_config(const std::string& text, const std::string& source,
                            const std::filesystem::path& base_dir, const ConfigOverrides& overrides = {});
ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Criterion for a sweep label (mc_ls, ic_ls, mc_w, ic_w, mc_exc, ic_exc,
/// mc_ls_printed, ic_ls_printed). Reference weights take sigma_eps from
/// `sigma_eps_sq`, or calibrate when it is empty.
CriterionSpec criterion_from_label(const std::string& label, double threshold,
                                   std::optional<double> sigma_eps_sq);
std::vector<std::string> criterion_labels();

}  // namespace tdesign
