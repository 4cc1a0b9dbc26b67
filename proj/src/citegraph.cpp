#include "xidx/citegraph.hpp"

#include <cmath>
#include <set>
#include <unordered_set>

#include "xidx/errors.hpp"

namespace xidx::graph {

void TraversalParams::validate() const {
  if (depth_cap < 1) throw DomainError("depth_cap must be >= 1");
  if (!(decay_base > 0.0 && decay_base <= 1.0)) throw DomainError("decay_base must be in (0, 1]");
}

CitationLayering build_layers(const std::string& seed_work_id, const TraversalParams& params,
                              provider::Provider& source) {
  params.validate();
  CitationLayering out;
  out.depth_cap = params.depth_cap;
  out.depth_counts.assign(static_cast<std::size_t>(params.depth_cap), 0);

  std::unordered_set<std::string> visited{seed_work_id};
  // Sorted frontiers make traversal order (and therefore provider call
  // order) byte-reproducible across runs.
  std::vector<std::string> frontier{seed_work_id};
  bool truncated = false;
  bool budget_hit = false;

  for (int depth = 1; depth <= params.depth_cap && !frontier.empty(); ++depth) {
    std::set<std::string> next;
    for (const auto& id : frontier) {
      provider::CitingWorks cw;
      try {
        cw = source.fetch_citing_works(id);
      } catch (const NotFoundError&) {
        if (id == seed_work_id) throw SeedNotFoundError(seed_work_id);
        continue;  // deeper works without a citing record simply have no citers
      } catch (const BudgetExceededError&) {
        budget_hit = true;
        break;
      }
      truncated |= cw.truncated;
      for (const auto& w : cw.works)
        if (!visited.contains(w.work_id)) next.insert(w.work_id);
    }
    visited.insert(next.begin(), next.end());
    out.depth_counts[static_cast<std::size_t>(depth - 1)] =
        static_cast<std::int64_t>(next.size());
    if (budget_hit) break;
    frontier.assign(next.begin(), next.end());
  }

  out.truncated = truncated || budget_hit;
  return out;
}

double decay_weighted_sum(const CitationLayering& layering, const TraversalParams& params) {
  params.validate();
  if (layering.depth_counts.size() != static_cast<std::size_t>(params.depth_cap))
    throw DimensionMismatchError(layering.depth_counts.size(),
                                 static_cast<std::size_t>(params.depth_cap));
  double sum = 0.0;
  double weight = 1.0;
  for (auto n : layering.depth_counts) {
    sum += weight * static_cast<double>(n);
    weight *= params.decay_base;
  }
  return sum;
}

DisciplineDistribution coauthor_pool(const std::vector<Work>& depth1_works,
                                     provider::Provider& source) {
  // Dedup by author_id across all depth-1 citers; sorted so provider calls
  // happen in a deterministic order.
  std::set<std::string> authors;
  for (const auto& w : depth1_works)
    for (const auto& ca : w.coauthors) authors.insert(ca.author_id);

  DisciplineDistribution dist;
  for (const auto& id : authors) {
    auto field = source.fetch_author_primary_field(id);
    if (field == kUnknownField)
      ++dist.unknown_authors;
    else
      ++dist.counts[field];
  }
  return dist;
}

}  // namespace xidx::graph
