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

#include "tdesign/design_search.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "tdesign/errors.hpp"
#include "virtual_factor.hpp"

namespace tdesign {
namespace {

using detail::VirtualFactor;

std::vector<std::size_t> sorted_blocked(const MetaModel& model, const Design& d) {
  std::vector<std::size_t> blocked = d.points;
  for (const auto& p : model.conditioning()) blocked.push_back(p.index);
  std::sort(blocked.begin(), blocked.end());
  return blocked;
}

// r-th grid index (0-based) that is not in the sorted blocked list.
std::size_t nth_free(std::size_t r, const std::vector<std::size_t>& blocked) {
  std::size_t idx = r;
  for (std::size_t b : blocked) {
    if (b <= idx) {
      ++idx;
    } else {
      break;
    }
  }
  return idx;
}

void check_disjoint(const MetaModel& model, const Design& d) {
  d.validate(model.grid());
  for (std::size_t p : d.points) {
    if (model.is_conditioned_on(p)) {
      throw std::invalid_argument("design point " + std::to_string(p) + " is already conditioned on");
    }
  }
}

Design random_design_excluding(std::size_t n, const Grid& grid, std::uint64_t seed,
                               const std::vector<std::size_t>& excluded_sorted) {
  const std::size_t available = grid.size() - excluded_sorted.size();
  if (n > available) {
    throw std::invalid_argument("cannot draw " + std::to_string(n) + " distinct points from " +
                                std::to_string(available) + " available grid points");
  }
  std::vector<std::size_t> pool;
  pool.reserve(available);
  for (std::size_t x = 0, k = 0; x < grid.size(); ++x) {
    if (k < excluded_sorted.size() && excluded_sorted[k] == x) {
      ++k;
      continue;
    }
    pool.push_back(x);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(n);
  return Design(std::move(pool));
}

// Exchange with leave-one-out factors: for each design position p the
// factor of d \ {x_p} is cached, so a trial swap at p is one rank-one update.
class ExchangeState {
 public:
  ExchangeState(const MetaModel& model, const CriterionSpec& resolved, Design d)
      : model_(model), spec_(resolved), design_(std::move(d)), cov_(model.grid().size()), var_(model.grid().size()) {
    rebuild();
    value_ = from_scratch();
  }

  double value() const { return value_; }
  const Design& design() const { return design_; }

  double trial(std::size_t pos, std::size_t candidate) {
    const VirtualFactor& f = loo_[pos];
    f.cov_row(candidate, cov_);
    detail::rank_one_variance(f, candidate, cov_, model_.jitter(), var_);
    return criterion_value(model_.mean(), var_, spec_);
  }

  void accept(std::size_t pos, std::size_t candidate, double value) {
    design_.points.erase(design_.points.begin() + static_cast<std::ptrdiff_t>(pos));
    design_.points.push_back(candidate);
    value_ = value;
    rebuild();
  }

 private:
  void rebuild() {
    loo_.assign(design_.size(), VirtualFactor(model_));
    for (std::size_t p = 0; p < design_.size(); ++p) {
      for (std::size_t q = 0; q < design_.size(); ++q)
        if (q != p) loo_[p].add(design_.points[q]);
    }
  }

  double from_scratch() const {
    VirtualFactor f(model_);
    for (std::size_t p : design_.points) f.add(p);
    return criterion_value(model_.mean(), f.variance(), spec_);
  }

  const MetaModel& model_;
  CriterionSpec spec_;
  Design design_;
  std::vector<VirtualFactor> loo_;
  std::vector<double> cov_;
  std::vector<double> var_;
  double value_ = 0.0;
};

struct ExchangeResult {
  Design design;
  double value;
};

ExchangeResult run_exchange(const Design& start, const MetaModel& model, const CriterionSpec& resolved,
                            const SearchConfig& cfg, ExchangeTrace* trace) {
  ExchangeState state(model, resolved, start);
  if (trace) {
    trace->values.clear();
    trace->accepted = 0;
    trace->values.reserve(cfg.max_iterations + 1);
    trace->values.push_back(state.value());
  }
  const std::size_t n = start.size();
  const std::size_t free_count = model.grid().size() - n - model.conditioning().size();
  if (n == 0 || free_count == 0 || cfg.max_iterations == 0) {
    if (trace) trace->values.resize(cfg.max_iterations + 1, state.value());
    return {start, state.value()};
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_int_distribution<std::size_t> pick_inner(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_outer(0, free_count - 1);
  std::vector<std::size_t> blocked = sorted_blocked(model, state.design());
  for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
    const std::size_t pos = pick_inner(rng);
    const std::size_t candidate = nth_free(pick_outer(rng), blocked);
    const double value = state.trial(pos, candidate);
    if (value < state.value()) {
      state.accept(pos, candidate, value);
      blocked = sorted_blocked(model, state.design());
      if (trace) ++trace->accepted;
    }
    if (trace) trace->values.push_back(state.value());
  }
  return {state.design(), state.value()};
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
}

Field design_variance(const MetaModel& model, const Design& d) {
  check_disjoint(model, d);
  VirtualFactor f(model);
  for (std::size_t p : d.points) f.add(p);
  return f.variance();
}

double design_criterion(const MetaModel& model, const CriterionSpec& spec, const Design& d) {
  const CriterionSpec resolved = spec.resolve(model.mean());
  const Field var = design_variance(model, d);
  return criterion_value(model.mean(), var, resolved);
}

Design greedy_start(const MetaModel& model, const CriterionSpec& spec, std::size_t n, GreedyStats* stats) {
  const CriterionSpec resolved = spec.resolve(model.mean());
  resolved.weight.validate();
  const Grid& grid = model.grid();
  const Field& mean = model.mean();
  if (n + model.conditioning().size() > grid.size()) {
    throw std::invalid_argument("greedy_start: n = " + std::to_string(n) + " exceeds the free grid points");
  }
  std::vector<char> taken(grid.size(), 0);
  for (const auto& p : model.conditioning()) taken[p.index] = 1;

  VirtualFactor factor(model);
  Design d;
  for (std::size_t i = 0; i < n; ++i) {
    const Field& var = factor.variance();
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = grid.size();
    for (std::size_t x = 0; x < grid.size(); ++x) {
      if (taken[x]) continue;
      const double h = weight(resolved.weight, mean[x], var[x]) * var[x];
      if (h > best) {
        best = h;
        arg = x;
      }
    }
    if (stats) ++stats->argmax_passes;
    if (arg == grid.size()) throw NumericalError("greedy_start: no admissible grid point left");
    d.points.push_back(arg);
    taken[arg] = 1;
    if (i + 1 < n) {
      factor.add(arg);
      if (stats) ++stats->variance_updates;
    }
  }
  return d;
}

Design exchange(const Design& start, const MetaModel& model, const CriterionSpec& spec, const SearchConfig& cfg,
                ExchangeTrace* trace) {
  check_disjoint(model, start);
  const CriterionSpec resolved = spec.resolve(model.mean());
  resolved.weight.validate();
  return run_exchange(start, model, resolved, cfg, trace).design;
}

Design random_design(std::size_t n, const Grid& grid, std::uint64_t seed) {
  return random_design_excluding(n, grid, seed, {});
}

Design maximin_design(std::size_t n, const Grid& grid) {
  if (n > grid.size()) {
    throw std::invalid_argument("maximin_design: n = " + std::to_string(n) + " exceeds the grid size");
  }
  // Squared distances in half-index units are integers, so ties are exact.
  const auto side = static_cast<long>(grid.side());
  auto centre_d2 = [&](std::size_t x) {
    const long a = 2 * static_cast<long>(grid.row(x)) - (side - 1);
    const long b = 2 * static_cast<long>(grid.col(x)) - (side - 1);
    return a * a + b * b;
  };
  auto d2 = [&](std::size_t x, std::size_t y) {
    const long a = static_cast<long>(grid.row(x)) - static_cast<long>(grid.row(y));
    const long b = static_cast<long>(grid.col(x)) - static_cast<long>(grid.col(y));
    return a * a + b * b;
  };

  Design d;
  if (n == 0) return d;
  std::size_t first = 0;
  for (std::size_t x = 1; x < grid.size(); ++x)
    if (centre_d2(x) < centre_d2(first)) first = x;
  d.points.push_back(first);

  std::vector<long> nearest(grid.size(), std::numeric_limits<long>::max());
  std::vector<char> taken(grid.size(), 0);
  taken[first] = 1;
  for (std::size_t x = 0; x < grid.size(); ++x) nearest[x] = d2(x, first);
  while (d.size() < n) {
    std::size_t arg = grid.size();
    for (std::size_t x = 0; x < grid.size(); ++x) {
      if (taken[x]) continue;
      if (arg == grid.size() || nearest[x] > nearest[arg]) arg = x;
    }
    d.points.push_back(arg);
    taken[arg] = 1;
    for (std::size_t x = 0; x < grid.size(); ++x) nearest[x] = std::min(nearest[x], d2(x, arg));
  }
  return d;
}

RestartPool restart_pool(const MetaModel& model, const CriterionSpec& spec, std::size_t n, const SearchConfig& cfg) {
  cfg.validate();
  const CriterionSpec resolved = spec.resolve(model.mean());
  resolved.weight.validate();
  std::vector<std::size_t> excluded;
  for (const auto& p : model.conditioning()) excluded.push_back(p.index);
  std::sort(excluded.begin(), excluded.end());

  RestartPool pool;
  pool.values.reserve(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    SearchConfig sub = cfg;
    sub.rng_seed = cfg.rng_seed + r;
    const Design start = random_design_excluding(n, model.grid(), sub.rng_seed, excluded);
    ExchangeResult res = run_exchange(start, model, resolved, sub, nullptr);
    pool.values.push_back(res.value);
    if (r == 0 || res.value < pool.best_value) {
      pool.best = std::move(res.design);
      pool.best_value = res.value;
      pool.best_restart = r;
    }
  }
  return pool;
}

Design best_of_restarts(const MetaModel& model, const CriterionSpec& spec, std::size_t n, const SearchConfig& cfg) {
  return restart_pool(model, spec, n, cfg).best;
}

EfficiencyReport efficiency_against(const Design& candidate, const Design& reference, const MetaModel& model,
                                    const CriterionSpec& spec) {
  EfficiencyReport rep;
  rep.candidate = candidate;
  rep.reference = reference;
  rep.candidate_value = design_criterion(model, spec, candidate);
  rep.reference_value = design_criterion(model, spec, reference);
  if (rep.candidate_value == 0.0) {
    throw NumericalError("candidate design " + to_string(candidate) +
                         " has criterion value 0 (perfect design); efficiency is undefined");
  }
  rep.eff = rep.reference_value / rep.candidate_value;
  return rep;
}

EfficiencyReport efficiency(const Design& candidate, const MetaModel& model, const CriterionSpec& spec,
                            const SearchConfig& cfg) {
  const Design reference = best_of_restarts(model, spec, candidate.size(), cfg);
  return efficiency_against(candidate, reference, model, spec);
}

}  // namespace tdesign
