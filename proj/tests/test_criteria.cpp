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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tdesign/criteria.hpp"
#include "tdesign/errors.hpp"

using namespace tdesign;

TEST_CASE("level-set weight examples") {
  CHECK(weight_ls(0.85, 0.05, 0.85) == 1.0);
  CHECK(weight_ls(0.85, 0.05, 0.85, LevelSetVariant::Printed) == 0.0);
  // |mu - T| = 1.96 sigma is the two-sided 5% point.
  const double p = weight_ls(1.0 + 1.96 * 0.2, 0.2, 1.0);
  CHECK(p == doctest::Approx(2.0 * (1.0 - oracle::normal_cdf_series(1.96))).epsilon(1e-12));
  CHECK(p == doctest::Approx(0.05).epsilon(0.001));
  CHECK(weight_ls(0.3, 0.0, 0.3) == 1.0);
  CHECK(weight_ls(0.4, 0.0, 0.3) == 0.0);
  CHECK(weight_ls(0.3, 0.0, 0.3, LevelSetVariant::Printed) == 0.0);
  CHECK(weight_ls(0.4, 0.0, 0.3, LevelSetVariant::Printed) == 1.0);
  CHECK_THROWS_AS(weight_ls(0.4, -0.1, 0.3), std::invalid_argument);
}

TEST_CASE("level-set weight at large uncertainty") {
  CHECK(weight_ls(0.95, 10.0, 0.85) > 0.99);
  CHECK(weight_ls(0.95, 10.0, 0.85, LevelSetVariant::Printed) < 0.01);
}

TEST_CASE("exceedance weight examples") {
  CHECK(weight_exc(0.85, 0.1, 0.85) == 0.5);
  CHECK(weight_exc(1.0, 0.5, 0.5) == doctest::Approx(oracle::normal_cdf_series(1.0)).epsilon(1e-13));
  CHECK(weight_exc(1.0, 0.5, 0.5) == doctest::Approx(0.841345).epsilon(1e-6));
  CHECK(weight_exc(1.0, 0.0, 0.5) == 1.0);
  CHECK(weight_exc(0.0, 0.0, 0.5) == 0.0);
  CHECK(weight_exc(0.5, 0.0, 0.5) == 0.5);
}

TEST_CASE("weight functions against the series oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> z_d(-6.0, 6.0);
  std::uniform_real_distribution<double> s_d(0.01, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double s = s_d(rng);
    const double z = z_d(rng);
    const double mu = 0.5 + z * s;
    const double F = oracle::normal_cdf_series((mu - 0.5) / s);
    CHECK(std::abs(weight_exc(mu, s, 0.5) - F) < 1e-12);
    CHECK(std::abs(weight_ls(mu, s, 0.5, LevelSetVariant::Printed) - 2.0 * std::abs(0.5 - F)) < 1e-12);
  }
}

TEST_CASE("reference weight") {
  CHECK(weight_W(0.6, 0.5 / (2 * std::numbers::pi), 0.6, 0.5 / (2 * std::numbers::pi)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weight_W(0.85, 0.05 * 0.05, 0.85, 0.005) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi * 0.0075)));
  CHECK(weight_W(0.85, 0.05 * 0.05, 0.85, 0.005) == doctest::Approx(4.6066).epsilon(1e-4));
  CHECK(weight_W(100.0, 0.01, 0.0, 0.01) == 0.0);
  CHECK(weight_W(0.3, 0.2, 0.5, 0.1) == doctest::Approx(weight_W(0.7, 0.2, 0.5, 0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(weight_W(0.3, 0.0, 0.3, 0.0), NumericalError);
  CHECK(weight_W(0.3, 0.0, 0.3, 0.01) > 0.0);
}

TEST_CASE("weight dispatch and validation") {
  WeightSpec s{WeightKind::SmoothedReference, 0.5};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.sigma_eps_sq = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.sigma_eps_sq = 0.01;
  CHECK_NOTHROW(s.validate());
  CHECK(weight(s, 0.5, 0.04) == doctest::Approx(weight_W(0.5, 0.04, 0.5, 0.01)));
  CHECK(weight({WeightKind::Exceedance, 0.5}, 0.7, 0.04) == weight_exc(0.7, 0.2, 0.5));
  CHECK(weight({WeightKind::LevelSet, 0.5}, 0.7, 0.04) == weight_ls(0.7, 0.2, 0.5));
  CHECK(weight({WeightKind::LevelSetPrinted, 0.5}, 0.7, 0.04) == weight_ls(0.7, 0.2, 0.5, LevelSetVariant::Printed));
  CHECK_THROWS_AS((WeightSpec{WeightKind::LevelSet, 0.5, 0.1}.validate()), std::invalid_argument);
}

TEST_CASE("sigma_eps calibration") {
  CHECK(calibrate_sigma_eps(std::vector{0.0, 2.0, 1.0}) == doctest::Approx(0.1));
  CHECK(calibrate_sigma_eps(std::vector{0.3, 1.9}) == doctest::Approx(0.08));
  CHECK(calibrate_sigma_eps(std::vector{0.4, 0.4}) == 0.0);
  WeightSpec s{WeightKind::SmoothedReference, 0.5};
  s.calibrate_sigma_eps = true;
  const WeightSpec r = s.resolve(std::vector{0.0, 2.0});
  REQUIRE(r.sigma_eps_sq);
  CHECK(*r.sigma_eps_sq == doctest::Approx(0.1));
  // Constant mean calibrates to zero; a zero posterior variance then makes the weight unbounded.
  std::vector<double> mean = {0.5, 0.5};
  std::vector<double> var = {0.0, 0.1};
  CHECK_THROWS_AS(criterion_value(mean, var, CriterionSpec{s, Aggregator::Max}), NumericalError);
}

TEST_CASE("criterion aggregation") {
  const std::vector<double> mean(9, 0.5);
  const std::vector<double> var(9, 0.49);
  const CriterionSpec mc{{WeightKind::Exceedance, 0.5}, Aggregator::Max};
  const CriterionSpec ic{{WeightKind::Exceedance, 0.5}, Aggregator::Integrated};
  CHECK(criterion_value(mean, var, mc) == doctest::Approx(0.245));
  CHECK(criterion_value(mean, var, ic) == doctest::Approx(9 * 0.245));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> m(16);
    std::vector<double> v(16);
    for (int x = 0; x < 16; ++x) {
      m[x] = u(rng);
      v[x] = u(rng);
    }
    CHECK(criterion_value(m, v, mc) <= criterion_value(m, v, ic));
  }
}

TEST_CASE("weighted variance is zero at observed points") {
  const std::vector<double> mean = {0.2, 0.9};
  const std::vector<double> var = {0.0, 0.3};
  const PosteriorSummary post{mean, var};
  CHECK(weighted_variance(0, post, {WeightKind::LevelSet, 0.5}) == 0.0);
  CHECK(weighted_variance(0, post, {WeightKind::Exceedance, 0.5}) == 0.0);
  CHECK(weighted_variance(1, post, {WeightKind::Exceedance, 0.5}) ==
        doctest::Approx(weight_exc(0.9, std::sqrt(0.3), 0.5) * 0.3));
}

TEST_CASE("5x5 one-point design: weighted variance matches hand composition") {
  const std::size_t n = 5;
  const Grid g(n);
  Field mu(25);
  for (std::size_t x = 0; x < 25; ++x) mu[x] = 0.2 + 0.05 * static_cast<double>(x);
  const MetaModel m = MetaModel(g, mu, MaternParams{0.7, 0.7, 0.2}).observe(Design({6}), std::vector{1.1});
  const auto ref = oracle::dense_condition(n, mu, 0.7, 0.7, 0.2, {6}, {1.1});
  const WeightSpec w{WeightKind::LevelSet, 0.85};
  double sum = 0.0;
  for (std::size_t x = 0; x < 25; ++x) {
    const double v = std::max(ref.variance[x], 0.0);
    const double expect = oracle::weight_ls_pvalue(ref.mean[x], std::sqrt(v), 0.85) * v;
    CHECK(std::abs(weighted_variance(x, m.summary(), w) - expect) < 1e-9);
    sum += expect;
  }
  CHECK(criterion_value(m.summary(), CriterionSpec{w, Aggregator::Integrated}) == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("4x4 two-point design: criterion matches per-point evaluation") {
  const Grid g(4);
  Field mu(16);
  for (std::size_t x = 0; x < 16; ++x) mu[x] = 0.5 + 0.1 * std::sin(static_cast<double>(x));
  const MetaModel m = MetaModel(g, mu, MaternParams{0.7, 0.7, 0.2}).plan(Design({2, 13}));
  const auto ref = oracle::dense_condition(4, mu, 0.7, 0.7, 0.2, {}, {}, {2, 13});
  const auto parts = oracle::criterion_parts(ref, [](double a, double s) { return oracle::weight_exceedance(a, s, 0.55); });
  CHECK(criterion_value(m.summary(), {{WeightKind::Exceedance, 0.55}, Aggregator::Max}) ==
        doctest::Approx(parts.max).epsilon(1e-9));
  CHECK(criterion_value(m.summary(), {{WeightKind::Exceedance, 0.55}, Aggregator::Integrated}) ==
        doctest::Approx(parts.sum).epsilon(1e-9));
}

TEST_CASE("criterion labels") {
  CHECK(criterion_label({{WeightKind::LevelSet, 0.0}, Aggregator::Max}) == "mc_ls");
  CHECK(criterion_label({{WeightKind::LevelSet, 0.0}, Aggregator::Integrated}) == "ic_ls");
  CHECK(criterion_label({{WeightKind::SmoothedReference, 0.0, 0.1}, Aggregator::Max}) == "mc_w");
  CHECK(criterion_label({{WeightKind::Exceedance, 0.0}, Aggregator::Integrated}) == "ic_exc");
  CHECK(criterion_label({{WeightKind::LevelSetPrinted, 0.0}, Aggregator::Max}) == "mc_ls_printed");
}
