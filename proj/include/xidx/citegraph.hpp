#pragma once

#include <string>
#include <vector>

#include "xidx/model.hpp"
#include "xidx/provider.hpp"

namespace xidx::graph {

struct TraversalParams {
  int depth_cap = 4;        // >= 1
  double decay_base = 0.5;  // in (0, 1]

  void validate() const;
};

/// Breadth-first layering of the citation neighborhood of a seed work.
/// n_d counts distinct works whose minimal citation distance from the seed
/// is exactly d; cycles and diamonds are deduplicated by a visited set.
/// Provider budget exhaustion yields a partial layering flagged truncated.
/// Throws SeedNotFoundError when the seed itself cannot be resolved.
CitationLayering build_layers(const std::string& seed_work_id, const TraversalParams& params,
                              provider::Provider& source);

/// Decay-weighted citation sum over layers: sum of decay_base^(d-1) * n_d.
/// Throws DimensionMismatchError when the layering does not match the cap.
double decay_weighted_sum(const CitationLayering& layering, const TraversalParams& params);

/// Discipline distribution of the unique co-authors of the depth-1 citing
/// works. Each author is attributed their modal field via the provider;
/// authors resolving to "unknown" are tallied separately.
DisciplineDistribution coauthor_pool(const std::vector<Work>& depth1_works,
                                     provider::Provider& source);

}  // namespace xidx::graph
