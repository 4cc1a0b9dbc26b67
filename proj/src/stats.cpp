#include "xidx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "xidx/errors.hpp"

namespace xidx::stats {

double geometric_mean(std::span<const double> scores) {
  if (scores.size() != 5) throw WrongArityError(scores.size());
  double log_sum = 0.0;
  for (double s : scores) {
    if (s < 0.0) throw NegativeScoreError(s);
    if (s == 0.0) return 0.0;
    log_sum += std::log(s);
  }
  return std::exp(log_sum / 5.0);
}

std::vector<double> rank_desc_with_ties(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the average of ranks i+1..j+1
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DegenerateInputError("spearman inputs differ in length");
  if (x.size() < 2) throw DegenerateInputError("spearman needs n >= 2");
  if (is_constant(x) || is_constant(y))
    throw DegenerateInputError("spearman undefined for constant input");

  const auto rx = rank_desc_with_ties(x);
  const auto ry = rank_desc_with_ties(y);

  // Identical or exactly mirrored rank vectors are perfect monotone
  // relations by definition; short-circuit so rho is exactly +/-1.
  if (rx == ry) return 1.0;
  const double n1 = static_cast<double>(rx.size()) + 1.0;
  bool mirrored = true;
  for (std::size_t i = 0; i < rx.size() && mirrored; ++i) mirrored = rx[i] == n1 - ry[i];
  if (mirrored) return -1.0;

  return std::clamp(pearson(rx, ry), -1.0, 1.0);
}

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DegenerateInputError("ols inputs differ in length");
  if (x.size() < 2) throw DegenerateInputError("ols needs n >= 2");
  if (is_constant(x)) throw DegenerateInputError("ols undefined for constant predictor");

  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }

  RegressionFit fit;
  fit.n = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    // constant response: the line is flat and explains nothing, but reports
    // must stay machine-readable
    fit.degenerate = true;
    fit.r2 = 0.0;
  } else {
    fit.r2 = std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

ValidationReport build_report(const std::vector<std::pair<std::string, double>>& vscores,
                              const std::vector<RaterScoreRow>& raters) {
  std::map<std::string, double> v_by_id(vscores.begin(), vscores.end());
  std::map<std::string, std::array<double, 5>> r_by_id;
  for (const auto& row : raters) r_by_id[row.dataset_id] = row.scores;

  if (v_by_id.size() != vscores.size())
    throw IdMismatchError("duplicate dataset_id in vscores input");
  if (r_by_id.size() != raters.size())
    throw IdMismatchError("duplicate dataset_id in rater input");

  std::vector<std::string> only_v, only_r;
  for (const auto& [id, v] : v_by_id)
    if (!r_by_id.contains(id)) only_v.push_back(id);
  for (const auto& [id, r] : r_by_id)
    if (!v_by_id.contains(id)) only_r.push_back(id);
  if (!only_v.empty() || !only_r.empty()) {
    std::string msg = "dataset_id sets do not match;";
    if (!only_v.empty()) {
      msg += " missing rater scores for:";
      for (const auto& id : only_v) msg += " " + id;
    }
    if (!only_r.empty()) {
      msg += " missing vscores for:";
      for (const auto& id : only_r) msg += " " + id;
    }
    throw IdMismatchError(msg);
  }

  ValidationReport report;
  std::vector<double> gm, v;
  for (const auto& [id, scores] : r_by_id) {
    ValidationRow row;
    row.dataset_id = id;
    row.geometric_mean = geometric_mean(scores);
    row.vscore = v_by_id.at(id);
    gm.push_back(row.geometric_mean);
    v.push_back(row.vscore);
    report.rows.push_back(std::move(row));
  }

  const auto gm_ranks = rank_desc_with_ties(gm);
  const auto v_ranks = rank_desc_with_ties(v);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    report.rows[i].rater_rank = gm_ranks[i];
    report.rows[i].vscore_rank = v_ranks[i];
  }

  report.spearman_rho = spearman(gm, v);
  report.ols_rater = ols_fit(gm_ranks, gm);
  report.ols_vscore = ols_fit(v_ranks, v);
  report.ols_gm_on_v = ols_fit(v, gm);
  report.slope_ratio = report.ols_rater.slope / report.ols_vscore.slope;
  return report;
}

std::string format_slope_ratio(double rater_slope, double vscore_slope) {
  const double ratio = rater_slope / vscore_slope;
  if (!std::isfinite(ratio)) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "≈ %lld:1", static_cast<long long>(std::llround(ratio)));
  return buf;
}

}  // namespace xidx::stats
