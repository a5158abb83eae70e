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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdesign/commands.hpp"
#include "tdesign/config.hpp"
#include "tdesign/errors.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split_criteria(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Targeted spatial design for Gaussian-field meta-models"};
  app.set_version_flag("--version", std::string(tdesign::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string criteria;
  std::string actual;
  std::string estimated;
  std::optional<double> threshold;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config_path, "Scenario config (JSON) or run manifest");
    if (config_required) opt->required();
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "Overrides search.seed");
    cmd->add_option("--criteria", criteria, "Comma-separated criterion sweep, e.g. mc_ls,ic_ls,mc_w,ic_w");
  };

  CLI::App* design = app.add_subcommand("design", "Greedy and exchange designs for each criterion");
  add_common(design, true);
  CLI::App* sequential = app.add_subcommand("sequential", "Sequential campaign against a truth field");
  add_common(sequential, true);
  CLI::App* efficiency = app.add_subcommand("efficiency", "Efficiency factors against the best restart design");
  add_common(efficiency, true);
  CLI::App* scores = app.add_subcommand("scores", "Quality scores of an estimated field");
  add_common(scores, false);
  scores->add_option("--actual", actual, "Actual field CSV");
  scores->add_option("--estimated", estimated, "Estimated field CSV");
  scores->add_option("--threshold", threshold, "Threshold T");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    tdesign::ConfigOverrides overrides;
    overrides.seed = seed;
    overrides.criteria = split_criteria(criteria);

    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "scores" && config_path.empty()) {
      if (actual.empty() || estimated.empty() || !threshold) {
        throw tdesign::ConfigError("scores: give --config, or all of --actual, --estimated and --threshold");
      }
      const tdesign::OutputSet out = tdesign::cmd_scores(tdesign::ScoresInput{actual, estimated, *threshold, {}});
      tdesign::write_outputs(out_dir, name, out, nullptr);
      return 0;
    }
    const tdesign::ScenarioConfig cfg = tdesign::load_config(config_path, overrides);
    tdesign::OutputSet out;
    if (name == "design") {
      out = tdesign::cmd_design(cfg);
    } else if (name == "sequential") {
      out = tdesign::cmd_sequential(cfg);
    } else if (name == "efficiency") {
      out = tdesign::cmd_efficiency(cfg);
    } else {
      out = tdesign::cmd_scores(cfg);
    }
    tdesign::write_outputs(out_dir, name, out, &cfg);
    return 0;
  } catch (const tdesign::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tdesign::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
