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

#include "tdesign/fields.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "tdesign/errors.hpp"

namespace tdesign {
namespace {

using Params = std::map<std::string, double>;

struct Formula {
  Params defaults;
  std::function<double(const Point&, const Params&)> eval;
};

double gauss_bump(const Point& x, double c1, double c2, double width) {
  const double r2 = (x.x1 - c1) * (x.x1 - c1) + (x.x2 - c2) * (x.x2 - c2);
  return std::exp(-r2 / (2.0 * width * width));
}

const std::map<std::string, Formula>& registry() {
  static const std::map<std::string, Formula> formulas = {
      {"elliptic_exp",
       {{{"scale", 2.0}, {"c1", 1.0}, {"c2", 0.5}, {"aspect", 3.0}, {"rate", 3.0}},
        [](const Point& x, const Params& p) {
          const double r = std::sqrt((x.x1 - p.at("c1")) * (x.x1 - p.at("c1")) +
                                     p.at("aspect") * (x.x2 - p.at("c2")) * (x.x2 - p.at("c2")));
          return p.at("scale") * std::exp(-r / p.at("rate"));
        }}},
      {"plane",
       {{{"offset", 0.0}, {"a1", 1.0}, {"a2", 0.0}},
        [](const Point& x, const Params& p) { return p.at("offset") + p.at("a1") * x.x1 + p.at("a2") * x.x2; }}},
      {"bump",
       {{{"offset", 0.0}, {"amplitude", 1.0}, {"c1", 0.5}, {"c2", 0.5}, {"width", 0.15}},
        [](const Point& x, const Params& p) {
          return p.at("offset") + p.at("amplitude") * gauss_bump(x, p.at("c1"), p.at("c2"), p.at("width"));
        }}},
      {"two_bumps",
       {{{"offset", 0.2},
         {"amplitude1", 1.0},
         {"c1_1", 0.3},
         {"c2_1", 0.3},
         {"width1", 0.1},
         {"amplitude2", 1.0},
         {"c1_2", 0.7},
         {"c2_2", 0.7},
         {"width2", 0.1}},
        [](const Point& x, const Params& p) {
          return p.at("offset") + p.at("amplitude1") * gauss_bump(x, p.at("c1_1"), p.at("c2_1"), p.at("width1")) +
                 p.at("amplitude2") * gauss_bump(x, p.at("c1_2"), p.at("c2_2"), p.at("width2"));
        }}},
  };
  return formulas;
}

}  // namespace

std::vector<std::string> analytic_names() {
  std::vector<std::string> names;
  for (const auto& [name, f] : registry()) names.push_back(name);
  return names;
}

Field analytic_field(const AnalyticSpec& spec, const Grid& grid) {
  const auto it = registry().find(spec.name);
  if (it == registry().end()) throw ConfigError("unknown analytic formula \"" + spec.name + "\"");
  Params params = it->second.defaults;
  for (const auto& [key, value] : spec.params) {
    if (!params.contains(key)) {
      throw ConfigError("formula \"" + spec.name + "\" has no parameter \"" + key + "\"");
    }
    params[key] = value;
  }
  Field out(grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) out[x] = it->second.eval(grid.point(x), params);
  return out;
}

Field BumpField::evaluate(const Grid& grid) const {
  Field out(grid.size(), offset);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const Point p = grid.point(x);
    for (const Bump& b : bumps) out[x] += b.amplitude * gauss_bump(p, b.centre.x1, b.centre.x2, b.width);
  }
  return out;
}

BumpField random_bumps(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.15, 0.85);
  std::uniform_real_distribution<double> width(0.07, 0.12);
  std::uniform_real_distribution<double> amp(0.9, 1.3);
  BumpField field;
  field.offset = 0.2;
  int attempts = 0;
  while (field.bumps.size() < count) {
    if (++attempts > 100000) throw std::runtime_error("random_bumps: cannot place separated bumps");
    const Point c{pos(rng), pos(rng)};
    bool separated = true;
    for (const auto& b : field.bumps) separated = separated && distance(b.centre, c) >= 0.45;
    if (!separated) continue;
    field.bumps.push_back({c, amp(rng), width(rng)});
  }
  return field;
}

Field gp_sample(const Grid& grid, const Field& mean, const MaternParams& kernel, std::uint64_t seed) {
  const std::size_t g = grid.size();
  if (g > kMaxGpSampleSize) {
    throw ConfigError("gp_sample truth is limited to " + std::to_string(kMaxGpSampleSize) + " grid points, got " +
                      std::to_string(g));
  }
  if (mean.size() != g) throw std::invalid_argument("gp_sample: mean does not match the grid");
  const MaternKernel k(kernel);
  const auto n = static_cast<Eigen::Index>(g);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double c = k(grid.distance(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      cov(a, b) = c;
      cov(b, a) = c;
    }
  cov.diagonal().array() += 1e-10 * kernel.variance();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NumericalError("gp_sample: prior covariance factorization failed");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
  const Eigen::VectorXd s = llt.matrixL() * z;
  Field out(g);
  for (std::size_t i = 0; i < g; ++i) out[i] = mean[i] + s[static_cast<Eigen::Index>(i)];
  return out;
}

}  // namespace tdesign
