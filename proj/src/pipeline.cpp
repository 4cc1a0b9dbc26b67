#include "xidx/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xidx/errors.hpp"

namespace xidx::pipeline {

DatasetInputs gather_inputs(provider::Provider& source, const DatasetRecord& record,
                            const graph::TraversalParams& tparams) {
  DatasetInputs out;
  out.record = record;
  out.layering.depth_cap = tparams.depth_cap;
  out.layering.depth_counts.assign(static_cast<std::size_t>(tparams.depth_cap), 0);

  bool have_layering = false;
  try {
    out.layering = graph::build_layers(record.seed_work_id, tparams, source);
    have_layering = true;
  } catch (const SeedNotFoundError&) {
    out.errors.push_back("seed_not_found:" + record.seed_work_id);
  } catch (const NetworkError& e) {
    out.errors.push_back(std::string("network:") + e.what());
  }

  if (have_layering && out.layering.direct_citers() > 0) {
    try {
      // depth-1 works come straight from the (cached) seed lookup
      out.depth1_works = source.fetch_citing_works(record.seed_work_id).works;
      out.fields = graph::coauthor_pool(out.depth1_works, source);
    } catch (const Error& e) {
      out.errors.push_back(std::string("coauthor_pool:") + e.what());
    }
  }

  if (record.access_url) {
    try {
      out.url_accessible = source.check_url_accessible(*record.access_url);
    } catch (const MalformedUrlError&) {
      out.errors.push_back("malformed_url:" + *record.access_url);
      out.url_accessible = false;
    } catch (const NetworkError& e) {
      out.errors.push_back(std::string("url_check:") + e.what());
      out.url_accessible = false;
    }
  }
  return out;
}

ScoredDataset score_inputs(const DatasetInputs& inputs, const metrics::MetricParams& mparams,
                           const graph::TraversalParams& tparams) {
  ScoredDataset out;
  out.dataset_id = inputs.record.dataset_id;
  out.truncated = inputs.layering.truncated;
  out.errors = inputs.errors;

  const double x = metrics::breadth(inputs.fields, mparams);
  const double y = metrics::quality(inputs.url_accessible);
  const std::int64_t c = metrics::citation_count(
      &inputs.layering, inputs.record.scalar_citation_override, mparams.citation_mode);
  const double d = metrics::reuse_depth(inputs.layering, tparams, mparams);
  out.score = metrics::vscore(x, y, c, d, mparams.vscore_form);
  return out;
}

std::vector<ScoredDataset> score_batch_serial(const std::vector<DatasetInputs>& inputs,
                                              const metrics::MetricParams& mparams,
                                              const graph::TraversalParams& tparams) {
  std::vector<ScoredDataset> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    out[i] = score_inputs(inputs[i], mparams, tparams);
  return out;
}

std::vector<ScoredDataset> score_batch_parallel(const std::vector<DatasetInputs>& inputs,
                                                const metrics::MetricParams& mparams,
                                                const graph::TraversalParams& tparams,
                                                int threads) {
  std::vector<ScoredDataset> out(inputs.size());
  const auto n = static_cast<std::int64_t>(inputs.size());
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(static)
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        score_inputs(inputs[static_cast<std::size_t>(i)], mparams, tparams);
  return out;
}

}  // namespace xidx::pipeline
