#pragma once

#include <string>
#include <vector>

#include "xidx/citegraph.hpp"
#include "xidx/metrics.hpp"
#include "xidx/model.hpp"
#include "xidx/provider.hpp"

namespace xidx::pipeline {

// Everything scoring needs for one dataset, gathered up front so the
// scoring stage is pure and can fan out across datasets.
struct DatasetInputs {
  DatasetRecord record;
  CitationLayering layering;
  std::vector<Work> depth1_works;
  DisciplineDistribution fields;
  bool url_accessible = false;
  std::vector<std::string> errors;  // soft failures; scoring proceeds
};

struct ScoredDataset {
  std::string dataset_id;
  VScoreBreakdown score;
  bool truncated = false;
  std::vector<std::string> errors;
};

// I/O stage: citation layering, depth-1 co-author pool and URL check for
// one dataset. Provider failures degrade to per-dataset error notes; only
// programming errors escape.
DatasetInputs gather_inputs(provider::Provider& source, const DatasetRecord& record,
                            const graph::TraversalParams& tparams);

// Pure scoring kernel for one gathered dataset.
ScoredDataset score_inputs(const DatasetInputs& inputs, const metrics::MetricParams& mparams,
                           const graph::TraversalParams& tparams);

// Serial reference for the batch scoring stage; the parallel variant must
// match it element for element.
std::vector<ScoredDataset> score_batch_serial(const std::vector<DatasetInputs>& inputs,
                                              const metrics::MetricParams& mparams,
                                              const graph::TraversalParams& tparams);

// OpenMP fan-out over datasets. Each element is written to its own slot,
// so results are identical to the serial reference regardless of schedule.
std::vector<ScoredDataset> score_batch_parallel(const std::vector<DatasetInputs>& inputs,
                                                const metrics::MetricParams& mparams,
                                                const graph::TraversalParams& tparams,
                                                int threads = 0);

}  // namespace xidx::pipeline
