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
#include <optional>
#include <vector>

#include "tdesign/criteria.hpp"
#include "tdesign/design.hpp"
#include "tdesign/design_search.hpp"
#include "tdesign/level_set.hpp"
#include "tdesign/meta_model.hpp"

namespace tdesign {

struct GroundTruth {
  Field field;
};

/// How a one-point stage picks its point.
enum class OnePointRule {
  /// argmax over unobserved x of c(x; d).
  WeightedVarianceArgmax,
  /// argmin over unobserved x of C(d + {x}) with x virtual (mean frozen).
  ExactMinimum,
};

struct StagePlan {
  Design initial_design;
  std::vector<std::size_t> stage_sizes;
  CriterionSpec criterion;
  SearchConfig search;  // multi-point stages: exchange settings
  OnePointRule one_point_rule = OnePointRule::ExactMinimum;

  void validate(const Grid& grid) const;
};

struct StageRecord {
  std::size_t stage = 0;
  Design design;  // cumulative
  std::vector<double> observations;
  Field mean;
  Field variance;
  double criterion_value = 0.0;
  std::optional<double> sigma_eps_sq;
  LevelSet estimated;
  QualityScores scores;
};

struct CampaignHistory {
  LevelSet actual;
  std::vector<StageRecord> stages;
};

/// Prior with constant mean T.
MetaModel default_prior(const Grid& grid, double threshold, const MaternParams& kernel);

/// C(d + {x}) for every grid x, the model's conditioning set being d and x
/// added as a virtual point; +inf at points already conditioned on.
std::vector<double> one_point_criteria(const MetaModel& model, const CriterionSpec& spec);

/// Point a one-point stage adds under the given rule (ties: smallest index).
std::size_t select_one_point(const MetaModel& model, const CriterionSpec& spec, OnePointRule rule);

struct StageResult {
  Design increment;
  MetaModel model;
};

/// Chooses n_i new points on model, observes them in truth and returns the
/// reconditioned model. One point: select_one_point; more: greedy start
/// followed by exchange with the given search settings.
StageResult run_stage(const MetaModel& model, const GroundTruth& truth, const CriterionSpec& spec, std::size_t n_i,
                      const SearchConfig& search = {}, OnePointRule rule = OnePointRule::ExactMinimum);

/// Observes the initial design, then runs every stage, recording posterior
/// snapshots, the criterion, the estimated level set and quality scores.
/// A smoothed-reference weight with calibration re-derives sigma_eps from
/// the current mean at each stage.
CampaignHistory run_campaign(const StagePlan& plan, const GroundTruth& truth, const MetaModel& prior,
                             double threshold);

}  // namespace tdesign
