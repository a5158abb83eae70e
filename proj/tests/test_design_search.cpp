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
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tdesign/design_search.hpp"
#include "tdesign/errors.hpp"

using namespace tdesign;

namespace {

const MaternParams kKernel{0.7, 0.7, 0.2};

// Greedy construction written directly from its definition on the dense oracle.
std::vector<std::size_t> oracle_greedy(std::size_t n_side, const std::vector<double>& mu, const MaternParams& k,
                                       std::size_t n, const std::function<double(double, double)>& w) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto post = oracle::dense_condition(n_side, mu, k.sigma, k.nu, k.kappa, {}, {}, chosen);
    const auto parts = oracle::criterion_parts(post, w);
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t x = 0; x < mu.size(); ++x) {
      if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
      if (parts.c[x] > best + 1e-12) {
        best = parts.c[x];
        arg = x;
      }
    }
    chosen.push_back(arg);
  }
  return chosen;
}

}  // namespace

TEST_CASE("greedy: full symmetry picks the smallest index") {
  const MetaModel m(Grid(6), Field(36, 0.4), kKernel);
  CHECK(greedy_start(m, {{WeightKind::Exceedance, 0.4}, Aggregator::Max}, 1) == Design({0}));
}

TEST_CASE("greedy: 3x3 second point minimises covariance with the first") {
  const Grid g(3);
  const MetaModel m(g, Field(9, 0.5), kKernel);
  const Design d = greedy_start(m, {{WeightKind::LevelSet, 0.5}, Aggregator::Max}, 2);
  REQUIRE(d.size() == 2);
  CHECK(d.points[0] == 0);
  std::size_t expect = 0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t x = 1; x < 9; ++x) {
    const double c = std::abs(oracle::matern(g.distance(0, x), 0.7, 0.7, 0.2));
    if (c < lowest) {
      lowest = c;
      expect = x;
    }
  }
  CHECK(d.points[1] == expect);
}

TEST_CASE("greedy: level-set weight with prior mean at the threshold is max-variance greedy") {
  const std::size_t n = 6;
  const MetaModel m(Grid(n), Field(n * n, 0.85), kKernel);
  const Design d = greedy_start(m, {{WeightKind::LevelSet, 0.85}, Aggregator::Integrated}, 5);
  const auto ref = oracle_greedy(n, Field(n * n, 0.85), kKernel, 5, [](double, double) { return 1.0; });
  CHECK(d.points == ref);
}

TEST_CASE("greedy matches the oracle construction with a non-constant mean") {
  const std::size_t n = 6;
  std::vector<double> mu(n * n);
  for (std::size_t x = 0; x < mu.size(); ++x) mu[x] = 0.6 + 0.5 * std::sin(0.7 * static_cast<double>(x));
  const MetaModel m(Grid(n), mu, kKernel);
  const Design exc = greedy_start(m, {{WeightKind::Exceedance, 0.85}, Aggregator::Max}, 6);
  CHECK(exc.points == oracle_greedy(n, mu, kKernel, 6, [](double a, double s) { return oracle::weight_exceedance(a, s, 0.85); }));
  const Design ls = greedy_start(m, {{WeightKind::LevelSet, 0.85}, Aggregator::Max}, 6);
  CHECK(ls.points == oracle_greedy(n, mu, kKernel, 6, [](double a, double s) { return oracle::weight_ls_pvalue(a, s, 0.85); }));
}

TEST_CASE("greedy: instrumentation and prefix property") {
  std::vector<double> mu(64);
  for (std::size_t x = 0; x < 64; ++x) mu[x] = 0.1 * static_cast<double>(x % 9);
  const MetaModel m(Grid(8), mu, kKernel);
  const CriterionSpec spec{{WeightKind::LevelSet, 0.4}, Aggregator::Max};
  GreedyStats stats;
  const Design full = greedy_start(m, spec, 7, &stats);
  CHECK(stats.argmax_passes == 7);
  CHECK(stats.variance_updates == 6);
  for (std::size_t k = 1; k <= 7; ++k) {
    const Design prefix = greedy_start(m, spec, k);
    CHECK(std::equal(prefix.points.begin(), prefix.points.end(), full.points.begin()));
  }
  CHECK(greedy_start(m, spec, 0).empty());
}

TEST_CASE("greedy skips points the model is already conditioned on") {
  const MetaModel m = MetaModel(Grid(4), Field(16, 0.5), kKernel).observe(Design({0, 15}), std::vector{0.5, 0.5});
  const Design d = greedy_start(m, {{WeightKind::LevelSet, 0.5}, Aggregator::Max}, 14);
  std::set<std::size_t> s(d.points.begin(), d.points.end());
  CHECK(s.size() == 14);
  CHECK_FALSE(s.contains(0));
  CHECK_FALSE(s.contains(15));
}

TEST_CASE("design criterion equals criterion of the planned model") {
  std::vector<double> mu(49);
  for (std::size_t x = 0; x < 49; ++x) mu[x] = 0.3 + 0.02 * static_cast<double>(x);
  const MetaModel m = MetaModel(Grid(7), mu, kKernel).observe(Design({24}), std::vector{1.0});
  const Design d({3, 40, 11});
  for (const auto agg : {Aggregator::Max, Aggregator::Integrated}) {
    const CriterionSpec spec{{WeightKind::LevelSet, 0.85}, agg};
    CHECK(design_criterion(m, spec, d) == doctest::Approx(criterion_value(m.plan(d).summary(), spec)).epsilon(1e-10));
  }
  const Field v = design_variance(m, d);
  for (std::size_t x = 0; x < 49; ++x) CHECK(v[x] == doctest::Approx(m.plan(d).variance()[x]).epsilon(1e-10));
}

TEST_CASE("exchange") {
  std::vector<double> mu(100);
  for (std::size_t x = 0; x < 100; ++x) mu[x] = 0.5 + 0.4 * std::cos(0.3 * static_cast<double>(x));
  const MetaModel m(Grid(10), mu, kKernel);
  const CriterionSpec spec{{WeightKind::LevelSet, 0.85}, Aggregator::Integrated};
  const Design start = random_design(4, Grid(10), 8);

  SUBCASE("zero iterations return the start") {
    CHECK(exchange(start, m, spec, SearchConfig{0, 1, 3}) == start);
  }
  SUBCASE("never worsens and is deterministic") {
    ExchangeTrace trace;
    const Design a = exchange(start, m, spec, SearchConfig{300, 1, 3}, &trace);
    const Design b = exchange(start, m, spec, SearchConfig{300, 1, 3});
    CHECK(a == b);
    CHECK(design_criterion(m, spec, a) <= design_criterion(m, spec, start));
    REQUIRE(trace.values.size() == 301);
    CHECK(trace.values.front() == doctest::Approx(design_criterion(m, spec, start)));
    CHECK(trace.values.back() == doctest::Approx(design_criterion(m, spec, a)));
    for (std::size_t k = 1; k < trace.values.size(); ++k) CHECK(trace.values[k] <= trace.values[k - 1]);
    CHECK(trace.accepted > 0);
  }
  SUBCASE("rejects invalid starts") {
    CHECK_THROWS_AS(exchange(Design({1, 1}), m, spec, SearchConfig{}), std::invalid_argument);
  }
}

TEST_CASE("exchange and restarts reach the 4x4 enumerated optimum") {
  std::vector<double> mu(16);
  for (std::size_t x = 0; x < 16; ++x) {
    const double x1 = oracle::grid_coord(x / 4, 4);
    const double x2 = oracle::grid_coord(x % 4, 4);
    mu[x] = 2.0 * std::exp(-std::sqrt((x1 - 1) * (x1 - 1) + 3 * (x2 - 0.5) * (x2 - 0.5)) / 3.0);
  }
  const MetaModel m(Grid(4), mu, kKernel);
  const CriterionSpec spec{{WeightKind::Exceedance, 0.85}, Aggregator::Integrated};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : oracle::combinations(16, 2)) {
    const auto post = oracle::dense_condition(4, mu, 0.7, 0.7, 0.2, {}, {}, d);
    best = std::min(best, oracle::criterion_parts(post, [](double a, double s) {
                            return oracle::weight_exceedance(a, s, 0.85);
                          }).sum);
  }
  const Design one = exchange(random_design(2, Grid(4), 1), m, spec, SearchConfig{500, 1, 1});
  CHECK(design_criterion(m, spec, one) <= best * 1.02);
  const Design pool = best_of_restarts(m, spec, 2, SearchConfig{500, 20, 9});
  CHECK(design_criterion(m, spec, pool) == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("random designs") {
  const Grid g(50);
  const Design a = random_design(10, g, 17);
  CHECK(a == random_design(10, g, 17));
  CHECK(std::set<std::size_t>(a.points.begin(), a.points.end()).size() == 10);
  CHECK_NOTHROW(a.validate(g));
  const Design all = random_design(9, Grid(3), 2);
  std::vector<std::size_t> sorted = all.points;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK_THROWS_AS(random_design(10, Grid(3), 1), std::invalid_argument);
  CHECK(random_design(10, g, 17) != random_design(10, g, 18));
}

TEST_CASE("maximin designs") {
  const Grid g(5);
  CHECK(maximin_design(1, g) == Design({12}));
  const Design two = maximin_design(2, g);
  double far = 0.0;
  std::size_t expect = 0;
  for (std::size_t x = 0; x < 25; ++x) {
    if (g.distance(12, x) > far + 1e-12) {
      far = g.distance(12, x);
      expect = x;
    }
  }
  CHECK(two.points[1] == expect);
  const Design three = maximin_design(3, g);
  const auto gap = [&](std::size_t x) { return std::min(g.distance(x, three.points[0]), g.distance(x, three.points[1])); };
  for (std::size_t x = 0; x < 25; ++x) CHECK(gap(x) <= gap(three.points[2]) + 1e-12);
  CHECK(maximin_design(25, g).size() == 25);
  CHECK_THROWS_AS(maximin_design(26, g), std::invalid_argument);
}

TEST_CASE("restart pool and efficiency") {
  std::vector<double> mu(64);
  for (std::size_t x = 0; x < 64; ++x) mu[x] = 0.85 + 0.3 * std::sin(0.5 * static_cast<double>(x));
  const MetaModel m(Grid(8), mu, kKernel);
  const CriterionSpec spec{{WeightKind::LevelSet, 0.85}, Aggregator::Max};
  const SearchConfig cfg{200, 6, 40};

  const RestartPool pool = restart_pool(m, spec, 3, cfg);
  REQUIRE(pool.values.size() == 6);
  for (double v : pool.values) CHECK(pool.best_value <= v);
  CHECK(pool.best_value == doctest::Approx(design_criterion(m, spec, pool.best)));
  CHECK(best_of_restarts(m, spec, 3, cfg) == pool.best);

  SearchConfig sub = cfg;
  sub.rng_seed = cfg.rng_seed + 2;
  const Design third = exchange(random_design(3, Grid(8), sub.rng_seed), m, spec, sub);
  CHECK(pool.values[2] == doctest::Approx(design_criterion(m, spec, third)));

  const SearchConfig single{200, 1, 40};
  SearchConfig sub0 = single;
  CHECK(best_of_restarts(m, spec, 3, single) == exchange(random_design(3, Grid(8), 40), m, spec, sub0));

  const EfficiencyReport self = efficiency(pool.best, m, spec, cfg);
  CHECK(self.eff == doctest::Approx(1.0));
  CHECK_FALSE(self.exceeds_one());
  const EfficiencyReport rnd = efficiency_against(random_design(3, Grid(8), 999), pool.best, m, spec);
  CHECK(rnd.eff > 0.0);
  CHECK(rnd.eff == doctest::Approx(pool.best_value / rnd.candidate_value));
  const EfficiencyReport flipped = efficiency_against(pool.best, random_design(3, Grid(8), 999), m, spec);
  CHECK(flipped.exceeds_one() == (flipped.eff > 1.0));
}

TEST_CASE("efficiency of a perfect design is reported as an error") {
  const MetaModel m(Grid(2), Field(4, 0.5), kKernel);
  const CriterionSpec spec{{WeightKind::LevelSet, 0.5}, Aggregator::Max};
  CHECK_THROWS_AS(efficiency_against(Design({0, 1, 2, 3}), Design({0, 1, 2, 3}), m, spec), NumericalError);
}

TEST_CASE("search config validation") {
  CHECK_THROWS_AS((SearchConfig{10, 0, 1}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SearchConfig{0, 1, 1}.validate()));
}
