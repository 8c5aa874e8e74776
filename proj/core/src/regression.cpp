// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/evaluation.hpp"

#include "pcqa/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace pcqa {

namespace {

double basis_power(FitForm form, int column) { return column == 3 && form == FitForm::Quartic ? 4.0 : column; }

double derivative(const RegressionFit& fit, double x) {
  const double top = fit.form == FitForm::Quartic ? 4.0 * x * x * x : 3.0 * x * x;
  return fit.beta[1] + 2.0 * fit.beta[2] * x + fit.beta[3] * top;
}

void require_same_length(std::span<const double> x, std::span<const double> y, std::size_t min_len) {
  if (x.size() != y.size()) {
    throw Error(ErrorCategory::InvalidArgument, "sample lists differ in length (" + std::to_string(x.size()) +
                                                    " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < min_len) {
    throw Error(ErrorCategory::InvalidArgument,
                "need at least " + std::to_string(min_len) + " samples, got " + std::to_string(x.size()));
  }
}

}  // namespace

double RegressionFit::predict(double x) const noexcept {
  const double top = form == FitForm::Quartic ? x * x * x * x : x * x * x;
  return beta[0] + beta[1] * x + beta[2] * x * x + beta[3] * top;
}

std::vector<double> RegressionFit::predict(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(x.size());
  for (double v : x) out.push_back(predict(v));
  return out;
}

RegressionFit fit_regression(std::span<const double> objective, std::span<const double> mos, FitForm form) {
  require_same_length(objective, mos, 5);
  for (double v : objective) {
    if (!std::isfinite(v)) throw Error(ErrorCategory::InvalidArgument, "objective scores must be finite");
  }
  if (std::set<double>(objective.begin(), objective.end()).size() < 4) {
    throw Error(ErrorCategory::RankDeficient, "regression needs at least 4 distinct objective values");
  }

  const auto n = static_cast<Eigen::Index>(objective.size());
  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = objective[static_cast<std::size_t>(i)];
    for (int c = 0; c < 4; ++c) design(i, c) = std::pow(x, basis_power(form, c));
    target(i) = mos[static_cast<std::size_t>(i)];
  }
  // Equilibrate columns; the raw powers of x differ by orders of magnitude.
  Eigen::Vector4d scale;
  for (int c = 0; c < 4; ++c) {
    scale(c) = design.col(c).norm();
    if (!(scale(c) > 0.0)) throw Error(ErrorCategory::RankDeficient, "regression design has a zero column");
    design.col(c) /= scale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 4) throw Error(ErrorCategory::RankDeficient, "regression design is rank deficient");
  const Eigen::VectorXd solution = qr.solve(target);

  RegressionFit fit;
  fit.form = form;
  for (int c = 0; c < 4; ++c) fit.beta[static_cast<std::size_t>(c)] = solution(c) / scale(c);
  return fit;
}

bool is_monotone_on(const RegressionFit& fit, double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  constexpr int kSamples = 1024;
  double min_d = derivative(fit, lo);
  double max_d = min_d;
  for (int s = 1; s <= kSamples; ++s) {
    const double x = lo + (hi - lo) * static_cast<double>(s) / kSamples;
    const double d = derivative(fit, x);
    min_d = std::min(min_d, d);
    max_d = std::max(max_d, d);
  }
  if (fit.form == FitForm::Cubic && fit.beta[3] != 0.0) {
    // The derivative is a parabola; include its vertex if it falls inside.
    const double vertex = -fit.beta[2] / (3.0 * fit.beta[3]);
    if (vertex > lo && vertex < hi) {
      const double d = derivative(fit, vertex);
      min_d = std::min(min_d, d);
      max_d = std::max(max_d, d);
    }
  }
  const double tol = 1e-12 * std::max(std::abs(min_d), std::abs(max_d));
  return min_d >= -tol || max_d <= tol;
}

double plcc(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, 2);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCategory::ZeroVariance, "correlation of a constant sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double srocc(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, 2);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return plcc(rx, ry);
}

}  // namespace pcqa
