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

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/fields.hpp"
#include "tdesign/sequential.hpp"

using namespace tdesign;

namespace {

const MaternParams kKernel{0.7, 0.7, 0.2};

Field bump_truth(const Grid& g) {
  return analytic_field({"bump", {{"amplitude", 1.0}, {"c1", 0.45}, {"c2", 0.55}, {"width", 0.2}}}, g);
}

std::vector<double> values_at(const Field& f, const Design& d) {
  std::vector<double> v;
  for (std::size_t x : d.points) v.push_back(f[x]);
  return v;
}

}  // namespace

TEST_CASE("default prior") {
  const MetaModel m = default_prior(Grid(7), 0.85, kKernel);
  for (std::size_t x = 0; x < 49; ++x) {
    CHECK(m.mean()[x] == 0.85);
    CHECK(m.variance()[x] == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(weight({WeightKind::LevelSet, 0.85}, m.mean()[x], m.variance()[x]) == 1.0);
  }
}

TEST_CASE("one-point criteria match the dense oracle") {
  const std::size_t n = 5;
  const Grid g(n);
  std::vector<double> mu(25);
  for (std::size_t x = 0; x < 25; ++x) mu[x] = 0.5 + 0.3 * std::cos(static_cast<double>(x));
  const Design d({4, 18});
  const std::vector<double> y = {0.1, 0.9};
  const MetaModel m = MetaModel(g, mu, kKernel).observe(d, y);
  for (const auto agg : {Aggregator::Max, Aggregator::Integrated}) {
    const CriterionSpec spec{{WeightKind::LevelSet, 0.6}, agg};
    const std::vector<double> crit = one_point_criteria(m, spec);
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < 25; ++x) {
      if (d.contains(x)) {
        CHECK(std::isinf(crit[x]));
        continue;
      }
      const auto post = oracle::dense_condition(n, mu, 0.7, 0.7, 0.2, d.points, y, {x});
      const auto parts = oracle::criterion_parts(post, [](double a, double s) { return oracle::weight_ls_pvalue(a, s, 0.6); });
      const double expect = agg == Aggregator::Max ? parts.max : parts.sum;
      CHECK(crit[x] == doctest::Approx(expect).epsilon(1e-9));
      if (expect < best) {
        best = expect;
        arg = x;
      }
    }
    CHECK(select_one_point(m, spec, OnePointRule::ExactMinimum) == arg);
  }
}

TEST_CASE("argmax rule picks the largest weighted variance") {
  const Grid g(6);
  const MetaModel m = default_prior(g, 0.5, kKernel).observe(Design({0, 35}), std::vector{0.2, 0.9});
  const CriterionSpec spec{{WeightKind::LevelSet, 0.5}, Aggregator::Max};
  const std::size_t x = select_one_point(m, spec, OnePointRule::WeightedVarianceArgmax);
  const WeightSpec w = spec.weight;
  for (std::size_t z = 0; z < 36; ++z) {
    const double cz = weight(w, m.mean()[z], m.variance()[z]) * m.variance()[z];
    CHECK(cz <= weight(w, m.mean()[x], m.variance()[x]) * m.variance()[x]);
  }
  CHECK(x != 0);
  CHECK(x != 35);
}

TEST_CASE("run_stage") {
  const Grid g(6);
  const GroundTruth truth{bump_truth(g)};
  const MetaModel prior = default_prior(g, 0.5, kKernel);
  const CriterionSpec spec{{WeightKind::LevelSet, 0.5}, Aggregator::Integrated};

  SUBCASE("two one-point stages equal one-shot conditioning") {
    const MetaModel m0 = prior.observe(Design({0}), values_at(truth.field, Design({0})));
    const StageResult s1 = run_stage(m0, truth, spec, 1);
    const StageResult s2 = run_stage(s1.model, truth, spec, 1);
    const Design all = s2.model.conditioning_design();
    REQUIRE(all.size() == 3);
    const auto ref = oracle::dense_condition(6, Field(36, 0.5), 0.7, 0.7, 0.2, all.points, values_at(truth.field, all));
    for (std::size_t x = 0; x < 36; ++x) {
      CHECK(std::abs(s2.model.mean()[x] - ref.mean[x]) < 1e-8);
      CHECK(std::abs(s2.model.variance()[x] - std::max(ref.variance[x], 0.0)) < 1e-8);
    }
    CHECK_FALSE(s1.increment.contains(0));
    CHECK_FALSE(s2.increment.contains(s1.increment.points[0]));
  }
  SUBCASE("multi-point stage") {
    const StageResult s = run_stage(prior, truth, spec, 3, SearchConfig{100, 1, 5});
    CHECK(s.increment.size() == 3);
    CHECK(s.model.conditioning().size() == 3);
    for (const auto& p : s.model.conditioning()) CHECK(*p.value == truth.field[p.index]);
  }
  SUBCASE("grid exhaustion") {
    const Grid tiny(2);
    const GroundTruth t{Field(4, 0.1)};
    const MetaModel full = default_prior(tiny, 0.5, kKernel).observe(Design({0, 1, 2}), std::vector{0.1, 0.1, 0.1});
    CHECK(run_stage(full, t, spec, 1).increment == Design({3}));
    const MetaModel done = full.observe(Design({3}), std::vector{0.1});
    CHECK_THROWS_AS(run_stage(done, t, spec, 1), NumericalError);
    CHECK_THROWS_AS(run_stage(full, t, spec, 2), NumericalError);
  }
}

TEST_CASE("campaign with no stages records only the initial snapshot") {
  const Grid g(5);
  StagePlan plan;
  plan.initial_design = maximin_design(3, g);
  plan.criterion = {{WeightKind::LevelSet, 0.5}, Aggregator::Max};
  const CampaignHistory h = run_campaign(plan, GroundTruth{bump_truth(g)}, default_prior(g, 0.5, kKernel), 0.5);
  REQUIRE(h.stages.size() == 1);
  CHECK(h.stages[0].stage == 0);
  CHECK(h.stages[0].design == plan.initial_design);
}

TEST_CASE("truth equal to the prior mean is interpolated") {
  const Grid g(6);
  StagePlan plan;
  plan.initial_design = maximin_design(4, g);
  plan.stage_sizes = {1, 1};
  plan.criterion = {{WeightKind::LevelSet, 0.5}, Aggregator::Max};
  const CampaignHistory h = run_campaign(plan, GroundTruth{Field(36, 0.5)}, default_prior(g, 0.5, kKernel), 0.5);
  for (const auto& rec : h.stages)
    for (std::size_t x : rec.design.points) CHECK(std::abs(rec.mean[x] - 0.5) < 1e-10);
}

TEST_CASE("campaign invariants and score improvement on a smooth truth") {
  const Grid g(30);
  const GroundTruth truth{bump_truth(g)};
  const MetaModel prior = default_prior(g, 0.5, kKernel);
  WeightSpec w_auto{WeightKind::SmoothedReference, 0.5};
  w_auto.calibrate_sigma_eps = true;
  const std::vector<CriterionSpec> specs = {{{WeightKind::LevelSet, 0.5}, Aggregator::Max},
                                            {{WeightKind::LevelSet, 0.5}, Aggregator::Integrated},
                                            {w_auto, Aggregator::Max},
                                            {w_auto, Aggregator::Integrated}};
  for (const CriterionSpec& spec : specs) {
    CAPTURE(criterion_label(spec));
    StagePlan plan;
    plan.initial_design = maximin_design(4, g);
    plan.stage_sizes.assign(12, 1);
    plan.criterion = spec;
    const CampaignHistory h = run_campaign(plan, truth, prior, 0.5);
    REQUIRE(h.stages.size() == 13);
    CHECK(h.stages.back().scores.q_area < h.stages[1].scores.q_area);
    for (std::size_t s = 1; s < h.stages.size(); ++s) {
      const Design& prev = h.stages[s - 1].design;
      const Design& cur = h.stages[s].design;
      CHECK(cur.size() == prev.size() + 1);
      CHECK(std::equal(prev.points.begin(), prev.points.end(), cur.points.begin()));
      const std::size_t added = cur.points.back();
      CHECK(h.stages[s - 1].variance[added] > 0.0);
    }
    for (const auto& rec : h.stages) {
      for (std::size_t i = 0; i < rec.design.size(); ++i) CHECK(rec.observations[i] == truth.field[rec.design.points[i]]);
      if (spec.weight.kind == WeightKind::SmoothedReference) {
        REQUIRE(rec.sigma_eps_sq);
        CHECK(*rec.sigma_eps_sq == doctest::Approx(calibrate_sigma_eps(rec.mean)));
      }
    }
  }
}

TEST_CASE("plan validation") {
  const Grid g(3);
  StagePlan plan;
  plan.initial_design = Design({0, 1});
  plan.stage_sizes = {0};
  plan.criterion = {{WeightKind::LevelSet, 0.5}, Aggregator::Max};
  CHECK_THROWS_AS(plan.validate(g), std::invalid_argument);
  plan.stage_sizes = {4, 4};
  CHECK_THROWS_AS(plan.validate(g), std::invalid_argument);
  plan.stage_sizes = {7};
  CHECK_NOTHROW(plan.validate(g));
}
