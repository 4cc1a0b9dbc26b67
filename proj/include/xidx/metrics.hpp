#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xidx/citegraph.hpp"
#include "xidx/model.hpp"

namespace xidx::metrics {

// V = X + Y + D*ln(1+C) is the standard form. log_after_scaling is the
// alternate reading V = X + Y + ln(1 + D*C), kept for sensitivity studies
// and excluded from the acceptance surface.
enum class VScoreForm { standard, log_after_scaling };

// normalized keeps the depth multiplier >= 1 for any cited dataset;
// raw_sum reports the undivided decay-weighted sum.
enum class ReuseDepthMode { normalized, raw_sum };

enum class CitationMode { graph, override_if_present };

struct MetricParams {
  double entropy_floor = 0.1;            // in [0, 1]
  double breadth_richness_weight = 1.0;  // multiplies the unique-field term
  VScoreForm vscore_form = VScoreForm::standard;
  ReuseDepthMode reuse_depth_mode = ReuseDepthMode::normalized;
  CitationMode citation_mode = CitationMode::override_if_present;
};

/// Shannon entropy of the known-field distribution, normalized into [0, 1]
/// by log(max(2, U)). Degenerate distributions (U <= 1) score 0.
double normalized_entropy(const DisciplineDistribution& dist);

/// Breadth X: floored entropy scaled by a logarithmic unique-field richness
/// term, X = max(floor, H)*(1 + w*log2(1+U)); just the floor when U = 0.
double breadth(const DisciplineDistribution& dist, const MetricParams& params = {});

/// Quality Y: binary URL accessibility.
double quality(bool url_accessible);

/// Reuse depth multiplier D: decay-weighted layer sum divided by n_1
/// (0 for uncited datasets). raw_sum mode skips the division.
double reuse_depth(const CitationLayering& layering, const graph::TraversalParams& tparams,
                   const MetricParams& params = {});

/// Citation count C from the layering's direct layer, the external override,
/// or both depending on mode. Throws NoSourceError when neither is present.
std::int64_t citation_count(const CitationLayering* layering,
                            std::optional<std::int64_t> override_count, CitationMode mode);

/// Composes the value score from its four components. Negative inputs and
/// non-binary Y are rejected with DomainError.
VScoreBreakdown vscore(double x, double y, std::int64_t c, double d,
                       VScoreForm form = VScoreForm::standard);

/// Author-level index: sum of V over every dataset listing the author.
/// Co-authors of a shared dataset each receive its full V.
double xindex(const std::string& author_id,
              std::span<const std::pair<DatasetRecord, VScoreBreakdown>> breakdowns);

}  // namespace xidx::metrics
