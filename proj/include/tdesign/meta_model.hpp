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

#include <Eigen/Dense>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tdesign/design.hpp"
#include "tdesign/grid.hpp"
#include "tdesign/matern.hpp"

namespace tdesign {

/// A conditioning point is either observed (carries a value) or virtual
/// (planned but not yet measured; it reduces variance but leaves the mean).
struct ConditioningPoint {
  std::size_t index = 0;
  std::optional<double> value;

  bool observed() const { return value.has_value(); }
};

struct PosteriorSummary {
  Field mean;
  Field variance;
};

/// Gaussian field on a grid with a Matern covariance, conditioned on a set of
/// grid points.
///
/// The kernel is stationary and the grid regular, so the prior covariance
/// between two points depends only on their index offsets; a table with one
/// entry per offset replaces the N^2 x N^2 matrix. Conditioning factorizes
/// only the m x m covariance of the conditioning points and keeps
/// L^{-1} K(d, E), from which posterior variances and conditional
/// covariances follow point-wise. A Cholesky pivot at or below
/// kJitterScale * sigma^2 gets that amount added, so well-separated designs
/// are conditioned exactly.
class MetaModel {
 public:
  static constexpr double kJitterScale = 1e-10;
  static constexpr double kNegativeVarianceTolerance = 1e-8;

  MetaModel(Grid grid, Field prior_mean, MaternParams kernel);

  const Grid& grid() const { return prior_->grid; }
  const MaternParams& kernel() const { return prior_->kernel; }
  double prior_variance() const { return prior_->kernel.variance(); }
  double jitter() const { return kJitterScale * prior_variance(); }
  const Field& prior_mean() const { return prior_->mean; }

  /// Posterior mean given the observed conditioning points.
  const Field& mean() const { return mean_; }
  /// Posterior variance given all conditioning points.
  const Field& variance() const { return variance_; }
  PosteriorSummary summary() const { return {mean_, variance_}; }

  const std::vector<ConditioningPoint>& conditioning() const { return conditioning_; }
  bool is_conditioned_on(std::size_t index) const;
  Design conditioning_design() const;

  double prior_cov(std::size_t a, std::size_t b) const;
  /// out[x] = prior cov(x, e) for every grid index x.
  void prior_cov_row(std::size_t e, std::span<double> out) const;
  /// out[x] = cov(x, e | conditioning points) for every grid index x.
  void conditional_cov_row(std::size_t e, std::span<double> out) const;
  double conditional_cov(std::size_t a, std::size_t b) const;

  /// New model additionally conditioned on observed values at d.
  MetaModel observe(const Design& d, std::span<const double> values) const;
  /// New model additionally conditioned on d without values (variance only).
  MetaModel plan(const Design& d) const;

  /// Clamps round-off negatives to zero, throws NumericalError below the
  /// tolerance.
  static double clamp_variance(double v, std::size_t index);
  /// Cholesky pivot after regularization; NaN when it stays non-positive.
  static double regularize_pivot(double pivot, double jitter) {
    if (pivot > jitter) return pivot;
    const double p = pivot + jitter;
    return p > 0.0 ? p : std::numeric_limits<double>::quiet_NaN();
  }

 private:
  struct Prior {
    Grid grid;
    Field mean;
    MaternParams kernel;
    std::vector<double> offset_cov;  // indexed by |di| * N + |dj|
  };

  MetaModel(std::shared_ptr<const Prior> prior, std::vector<ConditioningPoint> conditioning);
  MetaModel extended(const Design& d, std::optional<std::span<const double>> values) const;
  void refresh();

  std::shared_ptr<const Prior> prior_;
  std::vector<ConditioningPoint> conditioning_;
  Eigen::MatrixXd whitened_;  // L^{-1} K(d, E), m x N^2
  Field mean_;
  Field variance_;
};

/// Posterior summary of m conditioned on d. With values the points are
/// observed; without, they are virtual and the mean stays at m.mean().
PosteriorSummary condition(const MetaModel& m, const Design& d,
                           std::optional<std::span<const double>> values = std::nullopt);

}  // namespace tdesign
