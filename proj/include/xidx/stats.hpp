#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xidx/model.hpp"

namespace xidx::stats {

/// Geometric mean of exactly five non-negative rater scores. A single zero
/// score annihilates the mean (no epsilon smoothing).
double geometric_mean(std::span<const double> scores);

/// Descending average ranks: rank 1 is the largest value; tied values share
/// the mean of the rank positions they span. Output sums to n(n+1)/2.
std::vector<double> rank_desc_with_ties(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of tie-averaged ranks.
/// Throws DegenerateInputError for constant inputs or n < 2.
double spearman(std::span<const double> x, std::span<const double> y);

/// Simple least-squares line y = slope*x + intercept with r2 as the squared
/// Pearson correlation. A constant response yields slope 0 and r2 = 0 with
/// the degenerate flag set; a constant predictor throws DegenerateInputError.
RegressionFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Runs the full validation protocol: rater geometric means, dual
/// descending rankings, Spearman rho between the two score vectors, and
/// three regressions (each score against its rank positions, plus geometric
/// mean against V). Inputs must cover identical dataset_id sets.
ValidationReport build_report(const std::vector<std::pair<std::string, double>>& vscores,
                              const std::vector<RaterScoreRow>& raters);

/// "N:1" display of the rater-to-V slope ratio, e.g. "≈ 7:1".
std::string format_slope_ratio(double rater_slope, double vscore_slope);

}  // namespace xidx::stats
