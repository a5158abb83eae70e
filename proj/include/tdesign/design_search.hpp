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
#include <span>
#include <vector>

#include "tdesign/criteria.hpp"
#include "tdesign/design.hpp"
#include "tdesign/meta_model.hpp"

namespace tdesign {

struct SearchConfig {
  std::size_t max_iterations = 10000;  // exchange iterations M
  std::size_t restarts = 1000;         // random starts behind d**
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Instrumentation for greedy_start.
struct GreedyStats {
  std::size_t argmax_passes = 0;
  std::size_t variance_updates = 0;
};

/// Criterion trajectory of one exchange run: values[k] = C(d^(k)).
struct ExchangeTrace {
  std::vector<double> values;
  std::size_t accepted = 0;
};

/// C(d) for the points of d added to model as virtual conditioning points:
/// the mean stays at model.mean(), the variance is conditioned on d.
double design_criterion(const MetaModel& model, const CriterionSpec& spec, const Design& d);

/// Posterior variance field of model with d added as virtual points.
Field design_variance(const MetaModel& model, const Design& d);

/// Greedy starting design: n passes, each picking the grid point that
/// maximises w_{i-1}(x) Var(y(x) | d_{i-1}), with the variance updated and
/// the mean frozen between passes. Points already in the model's
/// conditioning set are never picked; ties go to the smallest index.
Design greedy_start(const MetaModel& model, const CriterionSpec& spec, std::size_t n, GreedyStats* stats = nullptr);

/// Random-swap exchange: M iterations, each drawing x uniformly in the
/// design and x' uniformly outside it (and outside the model's conditioning
/// set); the swap is kept iff it strictly lowers the criterion.
Design exchange(const Design& start, const MetaModel& model, const CriterionSpec& spec, const SearchConfig& cfg,
                ExchangeTrace* trace = nullptr);

/// n grid points drawn uniformly without replacement.
Design random_design(std::size_t n, const Grid& grid, std::uint64_t seed);

/// Greedy maximin: the point closest to the grid centre, then repeatedly
/// the point maximising its distance to the chosen set (ties: smallest index).
Design maximin_design(std::size_t n, const Grid& grid);

struct RestartPool {
  Design best;
  double best_value = 0.0;
  std::size_t best_restart = 0;
  std::vector<double> values;  // final criterion of each restart
};

/// Exchange from cfg.restarts random starts; restart r uses seed
/// cfg.rng_seed + r both for its start design and for its exchange run.
RestartPool restart_pool(const MetaModel& model, const CriterionSpec& spec, std::size_t n, const SearchConfig& cfg);
Design best_of_restarts(const MetaModel& model, const CriterionSpec& spec, std::size_t n, const SearchConfig& cfg);

struct EfficiencyReport {
  double eff = 0.0;
  Design candidate;
  Design reference;
  double candidate_value = 0.0;
  double reference_value = 0.0;

  /// The candidate beat every restart result.
  bool exceeds_one() const { return eff > 1.0; }
};

/// eff = C(reference) / C(candidate). Throws NumericalError when C(candidate) = 0.
EfficiencyReport efficiency_against(const Design& candidate, const Design& reference, const MetaModel& model,
                                    const CriterionSpec& spec);
/// Efficiency of candidate against d** = best_of_restarts(model, spec, |candidate|, cfg).
EfficiencyReport efficiency(const Design& candidate, const MetaModel& model, const CriterionSpec& spec,
                            const SearchConfig& cfg);

}  // namespace tdesign
