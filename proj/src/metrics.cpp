#include "xidx/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "xidx/errors.hpp"

namespace xidx::metrics {

double normalized_entropy(const DisciplineDistribution& dist) {
  const auto u = dist.counts.size();
  if (u <= 1) return 0.0;

  double total = 0.0;
  for (const auto& [label, count] : dist.counts) total += static_cast<double>(count);

  double h = 0.0;
  for (const auto& [label, count] : dist.counts) {
    const double p = static_cast<double>(count) / total;
    h -= p * std::log(p);
  }
  // normalizer log(max(2, U)); the log base cancels between H and it
  const double normalized = h / std::log(static_cast<double>(std::max<std::size_t>(2, u)));
  return std::clamp(normalized, 0.0, 1.0);
}

double breadth(const DisciplineDistribution& dist, const MetricParams& params) {
  if (dist.counts.empty()) return params.entropy_floor;
  const double evenness = std::max(params.entropy_floor, normalized_entropy(dist));
  const double u = static_cast<double>(dist.unique_fields());
  return evenness * (1.0 + params.breadth_richness_weight * std::log2(1.0 + u));
}

double quality(bool url_accessible) { return url_accessible ? 1.0 : 0.0; }

double reuse_depth(const CitationLayering& layering, const graph::TraversalParams& tparams,
                   const MetricParams& params) {
  const double weighted = graph::decay_weighted_sum(layering, tparams);
  if (params.reuse_depth_mode == ReuseDepthMode::raw_sum) return weighted;
  const auto n1 = layering.direct_citers();
  if (n1 < 1) return 0.0;
  return weighted / static_cast<double>(n1);
}

std::int64_t citation_count(const CitationLayering* layering,
                            std::optional<std::int64_t> override_count, CitationMode mode) {
  if (mode == CitationMode::override_if_present && override_count) {
    if (*override_count < 0) throw DomainError("citation override must be >= 0");
    return *override_count;
  }
  if (layering) return layering->direct_citers();
  throw NoSourceError();
}

VScoreBreakdown vscore(double x, double y, std::int64_t c, double d, VScoreForm form) {
  if (x < 0.0) throw DomainError("breadth X must be >= 0");
  if (y != 0.0 && y != 1.0) throw DomainError("quality Y must be 0 or 1");
  if (c < 0) throw DomainError("citation count C must be >= 0");
  if (d < 0.0) throw DomainError("reuse depth D must be >= 0");

  VScoreBreakdown out;
  out.breadth_x = x;
  out.quality_y = y;
  out.citations_c = c;
  out.depth_multiplier_d = d;
  const double cd = static_cast<double>(c);
  out.value_v = form == VScoreForm::standard ? x + y + d * std::log1p(cd)
                                             : x + y + std::log1p(d * cd);
  return out;
}

double xindex(const std::string& author_id,
              std::span<const std::pair<DatasetRecord, VScoreBreakdown>> breakdowns) {
  double sum = 0.0;
  for (const auto& [record, score] : breakdowns)
    if (record.has_author(author_id)) sum += score.value_v;
  return sum;
}

}  // namespace xidx::metrics
