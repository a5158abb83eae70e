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

#include "tdesign/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tdesign/errors.hpp"
#include "virtual_factor.hpp"

namespace tdesign {
namespace {

std::vector<double> observe_truth(const GroundTruth& truth, const Design& d) {
  std::vector<double> values;
  values.reserve(d.size());
  for (std::size_t x : d.points) values.push_back(truth.field[x]);
  return values;
}

StageRecord snapshot(std::size_t stage, const MetaModel& model, const CriterionSpec& spec, const GroundTruth& truth,
                     const LevelSet& actual, double threshold) {
  StageRecord rec;
  rec.stage = stage;
  rec.design = model.conditioning_design();
  rec.observations = observe_truth(truth, rec.design);
  rec.mean = model.mean();
  rec.variance = model.variance();
  const CriterionSpec resolved = spec.resolve(model.mean());
  rec.sigma_eps_sq = resolved.weight.sigma_eps_sq;
  rec.criterion_value = criterion_value(model.mean(), model.variance(), resolved);
  rec.estimated = extract_level_set(model.mean(), model.grid(), threshold);
  rec.scores.q_dist = q_dist(actual, rec.estimated, model.grid());
  rec.scores.q_value = q_value(truth.field, model.mean(), actual, rec.estimated, threshold);
  rec.scores.q_area = q_area(truth.field, model.mean(), threshold);
  return rec;
}

}  // namespace

void StagePlan::validate(const Grid& grid) const {
  initial_design.validate(grid);
  criterion.weight.validate();
  search.validate();
  std::size_t total = initial_design.size();
  for (std::size_t n : stage_sizes) {
    if (n == 0) throw std::invalid_argument("stage sizes must be positive");
    total += n;
  }
  if (total > grid.size()) {
    throw std::invalid_argument("plan needs " + std::to_string(total) + " points but the grid has " +
                                std::to_string(grid.size()));
  }
}

MetaModel default_prior(const Grid& grid, double threshold, const MaternParams& kernel) {
  return MetaModel(grid, Field(grid.size(), threshold), kernel);
}

std::vector<double> one_point_criteria(const MetaModel& model, const CriterionSpec& spec) {
  const CriterionSpec resolved = spec.resolve(model.mean());
  resolved.weight.validate();
  const std::size_t g = model.grid().size();
  std::vector<double> out(g, std::numeric_limits<double>::infinity());
  std::vector<char> taken(g, 0);
  for (const auto& p : model.conditioning()) taken[p.index] = 1;

  const detail::VirtualFactor base(model);
  std::vector<double> cov(g);
  std::vector<double> var(g);
  for (std::size_t x = 0; x < g; ++x) {
    if (taken[x]) continue;
    base.cov_row(x, cov);
    detail::rank_one_variance(base, x, cov, model.jitter(), var);
    out[x] = criterion_value(model.mean(), var, resolved);
  }
  return out;
}

std::size_t select_one_point(const MetaModel& model, const CriterionSpec& spec, OnePointRule rule) {
  const std::size_t g = model.grid().size();
  if (model.conditioning().size() >= g) throw NumericalError("grid exhausted: every point is already observed");
  std::vector<char> taken(g, 0);
  for (const auto& p : model.conditioning()) taken[p.index] = 1;

  std::size_t arg = g;
  if (rule == OnePointRule::WeightedVarianceArgmax) {
    const CriterionSpec resolved = spec.resolve(model.mean());
    resolved.weight.validate();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g; ++x) {
      if (taken[x]) continue;
      const double c = weight(resolved.weight, model.mean()[x], model.variance()[x]) * model.variance()[x];
      if (c > best) {
        best = c;
        arg = x;
      }
    }
  } else {
    const std::vector<double> crit = one_point_criteria(model, spec);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g; ++x) {
      if (taken[x]) continue;
      if (arg == g || crit[x] < best) {
        best = crit[x];
        arg = x;
      }
    }
  }
  return arg;
}

StageResult run_stage(const MetaModel& model, const GroundTruth& truth, const CriterionSpec& spec, std::size_t n_i,
                      const SearchConfig& search, OnePointRule rule) {
  const std::size_t g = model.grid().size();
  if (truth.field.size() != g) throw std::invalid_argument("ground truth does not match the grid");
  if (n_i == 0) throw std::invalid_argument("stage size must be positive");
  if (model.conditioning().size() + n_i > g) {
    throw NumericalError("grid exhausted: " + std::to_string(g - model.conditioning().size()) +
                         " unobserved points left, stage needs " + std::to_string(n_i));
  }
  Design increment;
  if (n_i == 1) {
    increment.points.push_back(select_one_point(model, spec, rule));
  } else {
    const Design start = greedy_start(model, spec, n_i);
    increment = exchange(start, model, spec, search);
  }
  MetaModel next = model.observe(increment, observe_truth(truth, increment));
  return {std::move(increment), std::move(next)};
}

CampaignHistory run_campaign(const StagePlan& plan, const GroundTruth& truth, const MetaModel& prior,
                             double threshold) {
  const Grid& grid = prior.grid();
  plan.validate(grid);
  if (truth.field.size() != grid.size()) throw std::invalid_argument("ground truth does not match the grid");

  CampaignHistory history;
  history.actual = extract_level_set(truth.field, grid, threshold);

  MetaModel model = plan.initial_design.empty()
                        ? prior
                        : prior.observe(plan.initial_design, observe_truth(truth, plan.initial_design));
  history.stages.push_back(snapshot(0, model, plan.criterion, truth, history.actual, threshold));

  for (std::size_t s = 0; s < plan.stage_sizes.size(); ++s) {
    SearchConfig search = plan.search;
    search.rng_seed = plan.search.rng_seed + s;
    StageResult res = run_stage(model, truth, plan.criterion, plan.stage_sizes[s], search, plan.one_point_rule);
    model = std::move(res.model);
    history.stages.push_back(snapshot(s + 1, model, plan.criterion, truth, history.actual, threshold));
  }
  return history;
}

}  // namespace tdesign
