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

#include "tdesign/meta_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tdesign/errors.hpp"

namespace tdesign {
namespace {

std::string indices_string(const std::vector<std::size_t>& idx) {
  return to_string(Design(idx));
}

}  // namespace

MetaModel::MetaModel(Grid grid, Field prior_mean, MaternParams kernel) {
  kernel.validate();
  if (prior_mean.size() != grid.size()) {
    throw std::invalid_argument("prior mean has " + std::to_string(prior_mean.size()) +
                                " values, grid has " + std::to_string(grid.size()));
  }
  auto prior = std::make_shared<Prior>(Prior{grid, std::move(prior_mean), kernel, {}});
  const MaternKernel k(kernel);
  const std::size_t n = grid.side();
  prior->offset_cov.resize(n * n);
  for (std::size_t di = 0; di < n; ++di) {
    for (std::size_t dj = di; dj < n; ++dj) {
      const double d = std::hypot(static_cast<double>(di), static_cast<double>(dj)) * grid.spacing();
      const double c = k(d);
      prior->offset_cov[di * n + dj] = c;
      prior->offset_cov[dj * n + di] = c;
    }
  }
  prior_ = std::move(prior);
  refresh();
}

MetaModel::MetaModel(std::shared_ptr<const Prior> prior, std::vector<ConditioningPoint> conditioning)
    : prior_(std::move(prior)), conditioning_(std::move(conditioning)) {
  refresh();
}

bool MetaModel::is_conditioned_on(std::size_t index) const {
  return std::any_of(conditioning_.begin(), conditioning_.end(),
                     [&](const ConditioningPoint& p) { return p.index == index; });
}

Design MetaModel::conditioning_design() const {
  Design d;
  for (const auto& p : conditioning_) d.points.push_back(p.index);
  return d;
}

double MetaModel::prior_cov(std::size_t a, std::size_t b) const {
  const Grid& g = prior_->grid;
  const auto di = static_cast<std::size_t>(std::abs(static_cast<long>(g.row(a)) - static_cast<long>(g.row(b))));
  const auto dj = static_cast<std::size_t>(std::abs(static_cast<long>(g.col(a)) - static_cast<long>(g.col(b))));
  return prior_->offset_cov[di * g.side() + dj];
}

void MetaModel::prior_cov_row(std::size_t e, std::span<double> out) const {
  const Grid& g = prior_->grid;
  const std::size_t n = g.side();
  const long er = static_cast<long>(g.row(e));
  const long ec = static_cast<long>(g.col(e));
  const double* table = prior_->offset_cov.data();
  for (std::size_t r = 0; r < n; ++r) {
    const double* trow = table + static_cast<std::size_t>(std::abs(static_cast<long>(r) - er)) * n;
    double* orow = out.data() + r * n;
    for (std::size_t c = 0; c < n; ++c) {
      orow[c] = trow[static_cast<std::size_t>(std::abs(static_cast<long>(c) - ec))];
    }
  }
}

void MetaModel::conditional_cov_row(std::size_t e, std::span<double> out) const {
  prior_cov_row(e, out);
  if (conditioning_.empty()) return;
  Eigen::Map<Eigen::VectorXd> o(out.data(), static_cast<Eigen::Index>(out.size()));
  o.noalias() -= whitened_.transpose() * whitened_.col(static_cast<Eigen::Index>(e));
}

double MetaModel::conditional_cov(std::size_t a, std::size_t b) const {
  double c = prior_cov(a, b);
  if (!conditioning_.empty()) {
    c -= whitened_.col(static_cast<Eigen::Index>(a)).dot(whitened_.col(static_cast<Eigen::Index>(b)));
  }
  return c;
}

double MetaModel::clamp_variance(double v, std::size_t index) {
  if (v >= 0.0) return v;
  if (v >= -kNegativeVarianceTolerance) return 0.0;
  throw NumericalError("posterior variance " + std::to_string(v) + " at grid index " +
                       std::to_string(index) + " is below the round-off tolerance");
}

MetaModel MetaModel::extended(const Design& d, std::optional<std::span<const double>> values) const {
  d.validate(grid());
  if (values && values->size() != d.size()) {
    throw std::invalid_argument("design has " + std::to_string(d.size()) + " points but " +
                                std::to_string(values->size()) + " values were given");
  }
  std::vector<ConditioningPoint> next = conditioning_;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (is_conditioned_on(d.points[i])) {
      throw std::invalid_argument("grid index " + std::to_string(d.points[i]) +
                                  " is already in the conditioning set");
    }
    std::optional<double> v;
    if (values) {
      if (!std::isfinite((*values)[i])) throw std::invalid_argument("observation values must be finite");
      v = (*values)[i];
    }
    next.push_back({d.points[i], v});
  }
  return MetaModel(prior_, std::move(next));
}

MetaModel MetaModel::observe(const Design& d, std::span<const double> values) const {
  return extended(d, values);
}

MetaModel MetaModel::plan(const Design& d) const { return extended(d, std::nullopt); }

void MetaModel::refresh() {
  const Grid& g = prior_->grid;
  const std::size_t grid_size = g.size();
  const double sigma2 = prior_variance();
  const auto m = static_cast<Eigen::Index>(conditioning_.size());

  mean_ = prior_->mean;
  variance_.assign(grid_size, sigma2);
  if (m == 0) {
    whitened_.resize(0, 0);
    return;
  }

  std::vector<std::size_t> all;
  std::vector<std::size_t> observed;
  for (const auto& p : conditioning_) {
    all.push_back(p.index);
    if (p.observed()) observed.push_back(p.index);
  }

  auto factor = [&](const std::vector<std::size_t>& idx) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd kde(k, static_cast<Eigen::Index>(grid_size));
    for (Eigen::Index a = 0; a < k; ++a) {
      Eigen::VectorXd row(static_cast<Eigen::Index>(grid_size));
      prior_cov_row(idx[a], std::span<double>(row.data(), grid_size));
      kde.row(a) = row.transpose();
    }
    // Row-wise Cholesky of K(d, d) in conditioning order.
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < a; ++b) {
        const double s = kde(a, static_cast<Eigen::Index>(idx[b])) - l.row(a).head(b).dot(l.row(b).head(b));
        l(a, b) = s / l(b, b);
      }
      const double pivot = regularize_pivot(sigma2 - l.row(a).head(a).squaredNorm(), jitter());
      if (std::isnan(pivot)) {
        throw NumericalError("covariance of design " + indices_string(idx) + " is not positive definite after jitter");
      }
      l(a, a) = std::sqrt(pivot);
    }
    l.triangularView<Eigen::Lower>().solveInPlace(kde);
    return std::make_pair(std::move(l), std::move(kde));
  };

  auto [llt_all, whitened] = factor(all);
  whitened_ = std::move(whitened);
  for (std::size_t x = 0; x < grid_size; ++x) {
    const double v = sigma2 - whitened_.col(static_cast<Eigen::Index>(x)).squaredNorm();
    variance_[x] = clamp_variance(v, x);
  }

  if (observed.empty()) return;
  auto apply_mean = [&](const Eigen::MatrixXd& l, const Eigen::MatrixXd& w,
                        const std::vector<std::size_t>& idx, const std::vector<double>& vals) {
    Eigen::VectorXd resid(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) resid[static_cast<Eigen::Index>(i)] = vals[i] - prior_->mean[idx[i]];
    l.triangularView<Eigen::Lower>().solveInPlace(resid);
    const Eigen::VectorXd update = w.transpose() * resid;
    for (std::size_t x = 0; x < grid_size; ++x) mean_[x] += update[static_cast<Eigen::Index>(x)];
  };

  std::vector<double> vals;
  for (const auto& p : conditioning_)
    if (p.observed()) vals.push_back(*p.value);

  if (observed.size() == all.size()) {
    apply_mean(llt_all, whitened_, observed, vals);
  } else {
    auto [llt_obs, whitened_obs] = factor(observed);
    apply_mean(llt_obs, whitened_obs, observed, vals);
  }
}

PosteriorSummary condition(const MetaModel& m, const Design& d, std::optional<std::span<const double>> values) {
  if (d.empty()) return m.summary();
  if (values) return m.observe(d, *values).summary();
  return m.plan(d).summary();
}

}  // namespace tdesign
