// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_EVALUATION_HPP
#define PCQA_EVALUATION_HPP

#include <array>
#include <span>
#include <vector>

namespace pcqa {

/// Fourth basis term of the MOS mapping: x^3 (cubic, default) or x^4.
enum class FitForm { Cubic, Quartic };

/// MOS_p = b1 + b2 x + b3 x^2 + b4 x^3   (x^4 for FitForm::Quartic)
struct RegressionFit {
  std::array<double, 4> beta{};
  FitForm form = FitForm::Cubic;

  double predict(double x) const noexcept;
  std::vector<double> predict(std::span<const double> x) const;
};

/// Ordinary least squares on the basis {1, x, x^2, x^3|x^4}. Needs >= 5
/// samples of equal length and a full-rank design; throws
/// Error(RankDeficient) otherwise (e.g. all x equal).
RegressionFit fit_regression(std::span<const double> objective, std::span<const double> mos,
                             FitForm form = FitForm::Cubic);

/// Whether the fitted curve is monotone (either direction) over [lo, hi].
bool is_monotone_on(const RegressionFit& fit, double lo, double hi);

/// Pearson correlation. Throws Error(ZeroVariance) if either side is constant.
double plcc(std::span<const double> x, std::span<const double> y);

/// Fractional ranks starting at 1; ties share the average of their ranks.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Spearman correlation: Pearson correlation of fractional ranks.
double srocc(std::span<const double> x, std::span<const double> y);

}  // namespace pcqa

#endif  // PCQA_EVALUATION_HPP
