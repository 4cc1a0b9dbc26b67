#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "xidx/cli.hpp"

using xidx::cli::RunConfig;

namespace {

// defaults < config file < flags
void add_shared_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key = value config file");
  cmd->add_option_function<std::string>(
         "--provider", [&](const std::string& v) { xidx::cli::apply_config_line(cfg, "provider", v); },
         "metadata source: live or fixture")
      ->check(CLI::IsMember({"live", "fixture"}));
  cmd->add_option_function<std::string>(
      "--fixture-dir", [&](const std::string& v) { cfg.fixture_dir = v; },
      "fixture provider directory");
  cmd->add_option_function<std::string>(
      "--cache-dir", [&](const std::string& v) { cfg.cache_dir = v; }, "response cache directory");
  cmd->add_option_function<std::string>(
      "--out-dir", [&](const std::string& v) { cfg.out_dir = v; }, "output directory");
  cmd->add_option_function<std::string>(
      "--base-url", [&](const std::string& v) { cfg.provider.base_url = v; },
      "API base URL (live provider)");
  cmd->add_option_function<double>(
      "--max-age-days", [&](double v) { cfg.max_age_days = v; },
      "cache entries older than this are re-fetched");
  cmd->add_option_function<int>(
      "--depth-cap", [&](int v) { cfg.traversal.depth_cap = v; }, "citation traversal depth cap");
  cmd->add_option_function<double>(
      "--decay-base", [&](double v) { cfg.traversal.decay_base = v; },
      "per-level decay of citation weights");
  cmd->add_option_function<double>(
      "--entropy-floor", [&](double v) { cfg.metric.entropy_floor = v; },
      "lower bound applied to normalized entropy");
  cmd->add_option_function<double>(
      "--richness-weight", [&](double v) { cfg.metric.breadth_richness_weight = v; },
      "weight of the unique-field term in breadth");
  cmd->add_option_function<std::string>(
         "--citation-mode",
         [&](const std::string& v) { xidx::cli::apply_config_line(cfg, "citation_mode", v); },
         "citation count source: graph or override_if_present")
      ->check(CLI::IsMember({"graph", "override_if_present"}));
  cmd->add_option_function<int>(
      "--jobs", [&](int v) { cfg.jobs = v; }, "scoring threads (1 = serial, 0 = all cores)");
  cmd->add_option_function<double>(
      "--rate-limit", [&](double v) { cfg.provider.max_requests_per_second = v; },
      "max live requests per second");
  cmd->add_option_function<double>(
      "--timeout", [&](double v) { cfg.provider.timeout_seconds = v; },
      "per-request timeout in seconds");
  cmd->add_option_function<int>(
      "--retries", [&](int v) { cfg.provider.max_retries = v; }, "retry count on 429/5xx");
  cmd->add_option_function<long long>(
      "--citation-cap", [&](long long v) { cfg.provider.per_node_citation_cap = v; },
      "max citing works fetched per node");
  cmd->add_option_function<long long>(
      "--node-budget", [&](long long v) { cfg.provider.total_node_budget = v; },
      "total citing-work budget per run");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dataset V-score and author X-index toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string manifest_path;
  std::string vscores_path;
  std::string raters_path;
  std::string seed_work_id;

  auto* fetch = app.add_subcommand("fetch", "warm the cache for every dataset in a manifest");
  fetch->add_option("--manifest", manifest_path, "dataset manifest CSV")->required();
  add_shared_options(fetch, cfg, config_path);

  auto* vscore = app.add_subcommand("vscore", "compute V-scores (vscores.csv, breakdowns.json)");
  vscore->add_option("--manifest", manifest_path, "dataset manifest CSV")->required();
  add_shared_options(vscore, cfg, config_path);

  auto* xindex = app.add_subcommand("xindex", "aggregate V-scores per author (xindex.csv)");
  xindex->add_option("--manifest", manifest_path, "dataset manifest CSV")->required();
  xindex->add_option("--vscores", vscores_path, "vscores.csv from the vscore step")->required();
  add_shared_options(xindex, cfg, config_path);

  auto* validate = app.add_subcommand(
      "validate", "compare V-scores against rater scores (report.json, plots)");
  validate->add_option("--vscores", vscores_path, "vscores.csv from the vscore step")->required();
  validate->add_option("--raters", raters_path, "rater scores CSV")->required();
  add_shared_options(validate, cfg, config_path);

  auto* graphcmd = app.add_subcommand("graph", "dump the citation layering of one seed work");
  graphcmd->add_option("seed", seed_work_id, "seed work id")->required();
  add_shared_options(graphcmd, cfg, config_path);

  // Two-pass parse so config-file values sit between defaults and flags.
  return xidx::cli::run_guarded(
      [&]() -> int {
        try {
          app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
          return app.exit(e) == 0 ? 0 : xidx::cli::kExitInput;
        }
        if (!config_path.empty()) {
          RunConfig base;
          xidx::cli::apply_config_file(base, config_path);
          std::swap(cfg, base);
          app.clear();
          app.parse(argc, argv);  // flags win over the config file
        }
        if (!manifest_path.empty()) cfg.manifest = manifest_path;

        if (*fetch) return xidx::cli::cmd_fetch(cfg, std::cout);
        if (*vscore) return xidx::cli::cmd_vscore(cfg, std::cout);
        if (*xindex) return xidx::cli::cmd_xindex(cfg, vscores_path, std::cout);
        if (*validate) return xidx::cli::cmd_validate(cfg, vscores_path, raters_path, std::cout);
        if (*graphcmd) return xidx::cli::cmd_graph(cfg, seed_work_id, std::cout);
        return xidx::cli::kExitInput;
      },
      std::cerr);
}
