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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdesign/config.hpp"

namespace tdesign {

inline constexpr const char* kToolName = "tdesign";
inline constexpr const char* kToolVersion = "1.0.0";

/// Files produced by a command, held in memory until the run succeeds.
struct OutputSet {
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::map<std::string, double> timings_ms;

  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
  const std::string* find(const std::string& name) const;
};

OutputSet cmd_design(const ScenarioConfig& cfg);
OutputSet cmd_sequential(const ScenarioConfig& cfg);
OutputSet cmd_efficiency(const ScenarioConfig& cfg);
/// Scores of the estimated field against the actual one at cfg.threshold.
OutputSet cmd_scores(const ScenarioConfig& cfg);

struct ScoresInput {
  std::filesystem::path actual;
  std::filesystem::path estimated;
  double threshold = 0.0;
  std::optional<std::size_t> grid_side;  // inferred from the row count when empty
};
OutputSet cmd_scores(const ScoresInput& input);

/// Creates out_dir and writes every file followed by manifest.json.
/// `config` is null for commands run without a scenario.
void write_outputs(const std::filesystem::path& out_dir, const std::string& command, const OutputSet& outputs,
                   const ScenarioConfig* config);

}  // namespace tdesign
