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

#include "tdesign/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "tdesign/design_search.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/io.hpp"
#include "tdesign/level_set.hpp"
#include "tdesign/meta_model.hpp"
#include "tdesign/sequential.hpp"

namespace tdesign {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using io::format_double;
using io::format_optional;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

CriterionSpec spec_for(const ScenarioConfig& cfg, const std::string& label) {
  if (label == criterion_label(cfg.criterion)) return cfg.criterion;
  return criterion_from_label(label, cfg.threshold, cfg.criterion.weight.sigma_eps_sq);
}

MetaModel prior_model(const ScenarioConfig& cfg) { return MetaModel(cfg.grid(), cfg.prior_mean, cfg.kernel); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Field weighted_variance_field(const Field& mean, const Field& variance, const CriterionSpec& spec) {
  const WeightSpec w = spec.weight.resolve(mean);
  Field out(mean.size());
  for (std::size_t x = 0; x < mean.size(); ++x) out[x] = weight(w, mean[x], variance[x]) * variance[x];
  return out;
}

std::size_t infer_grid_side(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file " + path.string());
  std::string line;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("index", 0) == 0) continue;
    ++rows;
  }
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rows))));
  if (side < 2 || side * side != rows) {
    throw ConfigError(path.string() + ": " + std::to_string(rows) + " rows do not form a square grid");
  }
  return side;
}

void add_scores(OutputSet& out, const Field& actual, const Field& estimated, const Grid& grid, double threshold) {
  const QualityScores s = quality_scores(actual, estimated, grid, threshold);
  const LevelSet a = extract_level_set(actual, grid, threshold);
  const LevelSet e = extract_level_set(estimated, grid, threshold);
  const auto comps = q_value_components(actual, estimated, a, e, threshold);
  std::string csv = "threshold,n_grid,actual_points,estimated_points,Q_dist,Q_value,Q_value_est,Q_value_actual,Q_area\n";
  csv += format_double(threshold) + ',' + std::to_string(grid.size()) + ',' + std::to_string(a.size()) + ',' +
         std::to_string(e.size()) + ',' + format_optional(s.q_dist) + ',' + format_optional(s.q_value) + ',' +
         format_optional(comps ? std::optional<double>(comps->estimated) : std::nullopt) + ',' +
         format_optional(comps ? std::optional<double>(comps->actual) : std::nullopt) + ',' +
         format_double(s.q_area) + '\n';
  out.add("scores.csv", csv);
  out.add("actual_level_set.csv", io::level_set_csv(a, grid));
  out.add("estimated_level_set.csv", io::level_set_csv(e, grid));
}

}  // namespace

const std::string* OutputSet::find(const std::string& name) const {
  for (const auto& [n, content] : files)
    if (n == name) return &content;
  return nullptr;
}

OutputSet cmd_design(const ScenarioConfig& cfg) {
  const Grid grid = cfg.grid();
  const MetaModel model = prior_model(cfg);
  OutputSet out;
  for (const std::string& label : cfg.criteria) {
    const Stopwatch clock;
    const CriterionSpec spec = spec_for(cfg, label);
    const CriterionSpec resolved = spec.resolve(model.mean());
    const Design greedy = greedy_start(model, resolved, cfg.design_size);
    ExchangeTrace trace;
    const Design best = exchange(greedy, model, resolved, cfg.search, &trace);
    const Field variance = design_variance(model, best);
    const Field c = weighted_variance_field(model.mean(), variance, resolved);

    json summary = {{"criterion", label},
                    {"n", cfg.design_size},
                    {"unconditioned_value", criterion_value(model.mean(), model.variance(), resolved)},
                    {"greedy_value", design_criterion(model, resolved, greedy)},
                    {"exchange_value", design_criterion(model, resolved, best)},
                    {"iterations", cfg.search.max_iterations},
                    {"accepted_swaps", trace.accepted},
                    {"seed", cfg.search.rng_seed},
                    {"sigma_eps_sq", optional_json(resolved.weight.kind == WeightKind::SmoothedReference
                                                       ? resolved.weight.sigma_eps_sq
                                                       : std::nullopt)},
                    {"greedy_design", greedy.points},
                    {"exchange_design", best.points}};
    out.add(label + "_design_greedy.csv", io::design_csv(greedy, grid));
    out.add(label + "_design_exchange.csv", io::design_csv(best, grid));
    out.add(label + "_weighted_variance.csv", io::field_csv(c, grid));
    out.add(label + "_criterion.json", dump(summary));
    out.timings_ms[label] = clock.ms();
  }
  out.add("prior_mean.csv", io::field_csv(model.mean(), grid));
  return out;
}

OutputSet cmd_sequential(const ScenarioConfig& cfg) {
  if (!cfg.plan) throw ConfigError("sequential: the config has no \"plan\" section");
  if (!cfg.truth) throw ConfigError("sequential: the config has no \"truth\" section");
  const Grid grid = cfg.grid();
  const MetaModel prior = prior_model(cfg);
  const GroundTruth truth{*cfg.truth};
  OutputSet out;
  std::string scores = "criterion,stage,n_points,Q_dist,Q_value,Q_area,criterion_value\n";
  std::optional<LevelSet> actual;
  for (const std::string& label : cfg.criteria) {
    const Stopwatch clock;
    StagePlan plan;
    plan.initial_design = cfg.plan->initial_design ? *cfg.plan->initial_design
                                                   : maximin_design(cfg.plan->initial_maximin, grid);
    plan.stage_sizes = cfg.plan->stage_sizes;
    plan.criterion = spec_for(cfg, label);
    plan.search = cfg.search;
    plan.one_point_rule = cfg.plan->one_point_rule;
    const CampaignHistory history = run_campaign(plan, truth, prior, cfg.threshold);
    if (!actual) actual = history.actual;
    for (const StageRecord& rec : history.stages) {
      scores += label + ',' + std::to_string(rec.stage) + ',' + std::to_string(rec.design.size()) + ',' +
                format_optional(rec.scores.q_dist) + ',' + format_optional(rec.scores.q_value) + ',' +
                format_double(rec.scores.q_area) + ',' + format_double(rec.criterion_value) + '\n';
      const std::string stem = label + "_stage" + std::to_string(rec.stage);
      out.add(stem + "_mean.csv", io::field_csv(rec.mean, grid));
      out.add(stem + "_level_set.csv", io::level_set_csv(rec.estimated, grid));
    }
    out.add(label + "_final_design.csv", io::design_csv(history.stages.back().design, grid));
    out.timings_ms[label] = clock.ms();
  }
  out.files.insert(out.files.begin(), {"scores.csv", scores});
  out.add("truth.csv", io::field_csv(truth.field, grid));
  out.add("actual_level_set.csv", io::level_set_csv(*actual, grid));
  return out;
}

OutputSet cmd_efficiency(const ScenarioConfig& cfg) {
  const Grid grid = cfg.grid();
  const MetaModel model = prior_model(cfg);
  const std::size_t n = cfg.design_size;
  if (n == 0) throw ConfigError("efficiency: design.n must be positive");
  OutputSet out;
  std::string csv = "criterion,kind,id,criterion_value,efficiency\n";
  json summary = json::array();
  for (const std::string& label : cfg.criteria) {
    const Stopwatch clock;
    const CriterionSpec spec = spec_for(cfg, label).resolve(model.mean());
    const Design greedy = greedy_start(model, spec, n);
    const Design best = exchange(greedy, model, spec, cfg.search);
    const RestartPool pool = restart_pool(model, spec, n, cfg.search);
    const double ref = pool.best_value;
    auto row = [&](const std::string& kind, std::size_t id, const Design& d) {
      const EfficiencyReport rep = efficiency_against(d, pool.best, model, spec);
      csv += label + ',' + kind + ',' + std::to_string(id) + ',' + format_double(rep.candidate_value) + ',' +
             format_double(rep.eff) + '\n';
      return rep;
    };
    const EfficiencyReport g = row("greedy", 0, greedy);
    const EfficiencyReport e = row("exchange", 0, best);
    row("reference", pool.best_restart, pool.best);
    for (std::size_t r = 0; r < pool.values.size(); ++r) {
      if (pool.values[r] == 0.0) throw NumericalError("efficiency: restart " + std::to_string(r) + " has C(d) = 0");
      csv += label + ",restart," + std::to_string(r) + ',' + format_double(pool.values[r]) + ',' +
             format_double(ref / pool.values[r]) + '\n';
    }
    for (std::size_t r = 0; r < cfg.efficiency.random_designs; ++r) {
      row("random", r, random_design(n, grid, cfg.search.rng_seed + r));
    }
    if (cfg.efficiency.include_maximin) row("maximin", 0, maximin_design(n, grid));
    summary.push_back({{"criterion", label},
                       {"reference_value", ref},
                       {"reference_restart", pool.best_restart},
                       {"reference_design", pool.best.points},
                       {"greedy_value", g.candidate_value},
                       {"greedy_efficiency", g.eff},
                       {"exchange_value", e.candidate_value},
                       {"exchange_efficiency", e.eff},
                       {"restarts", cfg.search.restarts},
                       {"iterations", cfg.search.max_iterations},
                       {"seed", cfg.search.rng_seed}});
    out.timings_ms[label] = clock.ms();
  }
  out.add("efficiency.csv", csv);
  out.add("efficiency.json", dump(summary));
  return out;
}

OutputSet cmd_scores(const ScenarioConfig& cfg) {
  if (!cfg.scores) throw ConfigError("scores: the config has no \"scores\" section");
  const Grid grid = cfg.grid();
  const Stopwatch clock;
  OutputSet out;
  add_scores(out, io::read_field_csv(cfg.scores->actual, grid), io::read_field_csv(cfg.scores->estimated, grid), grid,
             cfg.threshold);
  out.timings_ms["scores"] = clock.ms();
  return out;
}

OutputSet cmd_scores(const ScoresInput& input) {
  const std::size_t side = input.grid_side ? *input.grid_side : infer_grid_side(input.actual);
  const Grid grid(side);
  if (!std::isfinite(input.threshold)) throw ConfigError("scores: threshold must be finite");
  const Stopwatch clock;
  OutputSet out;
  add_scores(out, io::read_field_csv(input.actual, grid), io::read_field_csv(input.estimated, grid), grid,
             input.threshold);
  out.timings_ms["scores"] = clock.ms();
  return out;
}

void write_outputs(const fs::path& out_dir, const std::string& command, const OutputSet& outputs,
                   const ScenarioConfig* config) {
  fs::create_directories(out_dir);
  json names = json::array();
  for (const auto& [name, content] : outputs.files) {
    io::write_file(out_dir / name, content);
    names.push_back(name);
  }
  json manifest = {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"outputs", names}};
  if (config) {
    manifest["config"] = config->resolved;
    manifest["seed"] = config->search.rng_seed;
  }
  manifest["timings_ms"] = outputs.timings_ms;
  io::write_file(out_dir / "manifest.json", dump(manifest));
}

}  // namespace tdesign
