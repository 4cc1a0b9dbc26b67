#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "xidx/citegraph.hpp"
#include "xidx/metrics.hpp"
#include "xidx/model.hpp"
#include "xidx/pipeline.hpp"
#include "xidx/provider.hpp"

namespace xidx::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;   // soft per-dataset errors present
inline constexpr int kExitInput = 2;     // manifest / CSV / config errors
inline constexpr int kExitProvider = 3;  // provider hard failures
inline constexpr int kExitNotFound = 4;  // unknown seed / dataset

enum class ProviderMode { live, fixture };

// Merged view of every knob: defaults < config file < command-line flags.
struct RunConfig {
  ProviderMode provider_mode = ProviderMode::live;
  std::filesystem::path fixture_dir;
  std::filesystem::path cache_dir = ".xindex-cache";
  std::filesystem::path out_dir = "out";
  std::filesystem::path manifest;
  double max_age_days = 30.0;
  int jobs = 1;  // 1 = serial reference path; 0 = all hardware threads

  provider::ProviderConfig provider;
  graph::TraversalParams traversal;
  metrics::MetricParams metric;

  void validate() const;
};

// Applies `key = value` lines (# comments, blank lines allowed) onto cfg.
// Unknown keys are input errors.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<DatasetRecord> load_manifest(const std::filesystem::path& path);
std::vector<RaterScoreRow> load_raters(const std::filesystem::path& path);

// vscores.csv reader used by the xindex and validate subcommands.
struct VScoreRow {
  std::string dataset_id;
  VScoreBreakdown score;
  bool truncated = false;
  std::string errors;
};
std::vector<VScoreRow> load_vscores(const std::filesystem::path& path);

// Subcommand bodies. Each returns an exit code and writes human output to
// `out`; they throw only on programming errors (CLI main maps exceptions
// from loading/validation onto exit codes).
int cmd_fetch(const RunConfig& cfg, std::ostream& out);
int cmd_vscore(const RunConfig& cfg, std::ostream& out);
int cmd_xindex(const RunConfig& cfg, const std::filesystem::path& vscores_path,
               std::ostream& out);
int cmd_validate(const RunConfig& cfg, const std::filesystem::path& vscores_path,
                 const std::filesystem::path& raters_path, std::ostream& out);
int cmd_graph(const RunConfig& cfg, const std::string& seed_work_id, std::ostream& out);

// Report serialization (full precision JSON, human-readable text).
nlohmann::json report_to_json(const ValidationReport& report);
std::string report_to_text(const ValidationReport& report);

// Exception-to-exit-code boundary used by main() and the tests.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace xidx::cli
