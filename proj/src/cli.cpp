#include "xidx/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "xidx/csv.hpp"
#include "xidx/errors.hpp"
#include "xidx/openalex.hpp"
#include "xidx/stats.hpp"
#include "xidx/svgplot.hpp"
#include "xidx/util.hpp"

namespace xidx::cli {

namespace {

const std::vector<std::string> kManifestHeader = {"dataset_id", "title",      "seed_work_id",
                                                  "access_url", "author_ids", "citation_override"};
const std::vector<std::string> kRaterHeader = {"dataset_id", "r1", "r2", "r3", "r4", "r5"};
const std::vector<std::string> kVScoreHeader = {"dataset_id", "X", "Y", "C",
                                                "D",          "V", "truncated", "errors"};
const std::vector<std::string> kXIndexHeader = {"author_id", "datasets", "xindex"};

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::input, "cannot parse " + what + " from '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorKind::input, "cannot parse " + what + " from '" + s + "'");
  return v;
}

void require_header(const std::vector<std::vector<std::string>>& rows,
                    const std::vector<std::string>& expected, const std::string& what) {
  if (rows.empty() || rows[0] != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ',';
      want += expected[i];
    }
    throw Error(ErrorKind::input, what + ": expected header '" + want + "'");
  }
}

struct ProviderStack {
  std::shared_ptr<provider::Provider> base;
  std::shared_ptr<provider::CachedProvider> cached;
};

ProviderStack build_provider(const RunConfig& cfg) {
  ProviderStack stack;
  if (cfg.provider_mode == ProviderMode::fixture) {
    stack.base = std::make_shared<provider::FixtureProvider>(cfg.fixture_dir, cfg.provider);
  } else {
    stack.base = std::make_shared<provider::OpenAlexClient>(cfg.provider);
  }
  stack.cached =
      std::make_shared<provider::CachedProvider>(stack.base, cfg.cache_dir, cfg.max_age_days);
  return stack;
}

std::vector<DatasetRecord> sorted_by_id(std::vector<DatasetRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.dataset_id < b.dataset_id; });
  return records;
}

nlohmann::json fit_to_json(const RegressionFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r2", fit.r2},
          {"n", fit.n},
          {"degenerate", fit.degenerate}};
}

}  // namespace

void RunConfig::validate() const {
  provider.validate();
  traversal.validate();
  if (metric.entropy_floor < 0.0 || metric.entropy_floor > 1.0)
    throw DomainError("entropy_floor must be in [0, 1]");
  if (metric.breadth_richness_weight < 0.0)
    throw DomainError("breadth_richness_weight must be >= 0");
  if (max_age_days <= 0.0) throw DomainError("max_age_days must be positive");
  if (jobs < 0) throw DomainError("jobs must be >= 0");
  if (provider_mode == ProviderMode::fixture && fixture_dir.empty())
    throw Error(ErrorKind::input, "fixture provider selected but no fixture_dir configured");
}

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "provider") {
    if (value == "live") cfg.provider_mode = ProviderMode::live;
    else if (value == "fixture") cfg.provider_mode = ProviderMode::fixture;
    else throw Error(ErrorKind::input, "provider must be 'live' or 'fixture', got '" + value + "'");
  } else if (key == "fixture_dir") {
    cfg.fixture_dir = value;
  } else if (key == "cache_dir") {
    cfg.cache_dir = value;
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "manifest") {
    cfg.manifest = value;
  } else if (key == "max_age_days") {
    cfg.max_age_days = parse_double(value, key);
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(parse_int(value, key));
  } else if (key == "base_url") {
    cfg.provider.base_url = value;
  } else if (key == "polite_contact") {
    cfg.provider.polite_contact = value;
  } else if (key == "rate_limit") {
    cfg.provider.max_requests_per_second = parse_double(value, key);
  } else if (key == "timeout_seconds") {
    cfg.provider.timeout_seconds = parse_double(value, key);
  } else if (key == "max_retries") {
    cfg.provider.max_retries = static_cast<int>(parse_int(value, key));
  } else if (key == "citation_cap") {
    cfg.provider.per_node_citation_cap = parse_int(value, key);
  } else if (key == "node_budget") {
    cfg.provider.total_node_budget = parse_int(value, key);
  } else if (key == "depth_cap") {
    cfg.traversal.depth_cap = static_cast<int>(parse_int(value, key));
  } else if (key == "decay_base") {
    cfg.traversal.decay_base = parse_double(value, key);
  } else if (key == "entropy_floor") {
    cfg.metric.entropy_floor = parse_double(value, key);
  } else if (key == "richness_weight") {
    cfg.metric.breadth_richness_weight = parse_double(value, key);
  } else if (key == "citation_mode") {
    if (value == "graph") cfg.metric.citation_mode = metrics::CitationMode::graph;
    else if (value == "override_if_present")
      cfg.metric.citation_mode = metrics::CitationMode::override_if_present;
    else throw Error(ErrorKind::input, "citation_mode must be 'graph' or 'override_if_present'");
  } else if (key == "vscore_form") {
    if (value == "standard") cfg.metric.vscore_form = metrics::VScoreForm::standard;
    else if (value == "log_after_scaling")
      cfg.metric.vscore_form = metrics::VScoreForm::log_after_scaling;
    else throw Error(ErrorKind::input, "vscore_form must be 'standard' or 'log_after_scaling'");
  } else if (key == "reuse_depth_mode") {
    if (value == "normalized") cfg.metric.reuse_depth_mode = metrics::ReuseDepthMode::normalized;
    else if (value == "raw_sum") cfg.metric.reuse_depth_mode = metrics::ReuseDepthMode::raw_sum;
    else throw Error(ErrorKind::input, "reuse_depth_mode must be 'normalized' or 'raw_sum'");
  } else {
    throw Error(ErrorKind::input, "unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open config file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw Error(ErrorKind::input,
                    path.string() + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    apply_config_line(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

std::vector<DatasetRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open manifest " + path.string());
  auto rows = csv::parse(in);
  require_header(rows, kManifestHeader, "manifest " + path.string());

  std::vector<ManifestRow> parsed;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    if (cells.size() != kManifestHeader.size()) {
      if (cells.size() < kManifestHeader.size())
        throw MissingFieldError(i + 1, kManifestHeader[cells.size()]);
      throw Error(ErrorKind::input,
                  "manifest row " + std::to_string(i + 1) + ": too many columns");
    }
    ManifestRow row;
    row.row = i + 1;
    row.dataset_id = cells[0];
    row.title = cells[1];
    row.seed_work_id = cells[2];
    row.access_url = cells[3];
    row.author_ids = cells[4];
    row.citation_override = cells[5];
    parsed.push_back(std::move(row));
  }
  return validate_manifest(parsed);
}

std::vector<RaterScoreRow> load_raters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open rater scores " + path.string());
  auto rows = csv::parse(in);
  require_header(rows, kRaterHeader, "rater scores " + path.string());

  std::vector<RaterScoreRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    if (cells.size() != kRaterHeader.size())
      throw Error(ErrorKind::input, "rater row " + std::to_string(i + 1) + ": expected " +
                                        std::to_string(kRaterHeader.size()) + " columns");
    RaterScoreRow row;
    row.dataset_id = cells[0];
    for (std::size_t r = 0; r < 5; ++r) {
      const double s = parse_double(cells[r + 1], "rater score");
      if (s < 0.0 || s > 100.0)
        throw Error(ErrorKind::input, "rater row " + std::to_string(i + 1) + ": score " +
                                          cells[r + 1] + " outside [0, 100]");
      row.scores[r] = s;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<VScoreRow> load_vscores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open vscores " + path.string());
  auto rows = csv::parse(in);
  require_header(rows, kVScoreHeader, "vscores " + path.string());

  std::vector<VScoreRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    if (cells.size() != kVScoreHeader.size())
      throw Error(ErrorKind::input, "vscores row " + std::to_string(i + 1) + ": expected " +
                                        std::to_string(kVScoreHeader.size()) + " columns");
    VScoreRow row;
    row.dataset_id = cells[0];
    row.score.breadth_x = parse_double(cells[1], "X");
    row.score.quality_y = parse_double(cells[2], "Y");
    row.score.citations_c = parse_int(cells[3], "C");
    row.score.depth_multiplier_d = parse_double(cells[4], "D");
    row.score.value_v = parse_double(cells[5], "V");
    row.truncated = cells[6] == "true";
    row.errors = cells[7];
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

struct GatherResult {
  std::vector<pipeline::DatasetInputs> inputs;
  std::vector<provider::ProviderStats> base_stats_after;  // per dataset
};

GatherResult gather_all(const std::vector<DatasetRecord>& records, ProviderStack& stack,
                        const RunConfig& cfg) {
  GatherResult out;
  out.inputs.reserve(records.size());
  for (const auto& rec : records) {
    out.inputs.push_back(pipeline::gather_inputs(*stack.cached, rec, cfg.traversal));
    out.base_stats_after.push_back(stack.base->stats());
  }
  return out;
}

std::vector<pipeline::ScoredDataset> score_all(const std::vector<pipeline::DatasetInputs>& inputs,
                                               const RunConfig& cfg) {
  if (cfg.jobs == 1) return pipeline::score_batch_serial(inputs, cfg.metric, cfg.traversal);
  return pipeline::score_batch_parallel(inputs, cfg.metric, cfg.traversal, cfg.jobs);
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) out += ';';
    out += errors[i];
  }
  return out;
}

}  // namespace

int cmd_fetch(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  auto records = sorted_by_id(load_manifest(cfg.manifest));
  auto stack = build_provider(cfg);

  long errors = 0;
  provider::ProviderStats prev{};
  auto hits_prev = stack.cached->cache_stats().hits;
  for (const auto& rec : records) {
    auto inputs = pipeline::gather_inputs(*stack.cached, rec, cfg.traversal);
    auto now = stack.base->stats();
    auto hits_now = stack.cached->cache_stats().hits;
    out << rec.dataset_id << "  provider_calls=" << (now.total() - prev.total())
        << " cache_hits=" << (hits_now - hits_prev) << " direct_citers=" << inputs.layering.direct_citers()
        << " truncated=" << (inputs.layering.truncated ? "yes" : "no");
    if (!inputs.errors.empty()) {
      out << " errors=" << join_errors(inputs.errors);
      ++errors;
    }
    out << '\n';
    prev = now;
    hits_prev = hits_now;
  }
  auto total = stack.base->stats();
  out << "total  datasets=" << records.size() << " provider_calls=" << total.total()
      << " cache_hits=" << stack.cached->cache_stats().hits << " dataset_errors=" << errors
      << '\n';
  return errors == 0 ? kExitOk : kExitPartial;
}

int cmd_vscore(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  auto records = sorted_by_id(load_manifest(cfg.manifest));
  auto stack = build_provider(cfg);

  auto gathered = gather_all(records, stack, cfg);
  auto scored = score_all(gathered.inputs, cfg);

  std::string csv_text = csv::join_row(kVScoreHeader);
  nlohmann::json breakdowns = nlohmann::json::array();
  long errors = 0;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const auto& s = scored[i];
    const auto& in = gathered.inputs[i];
    if (!s.errors.empty()) ++errors;
    csv_text += csv::join_row({s.dataset_id, fmt6(s.score.breadth_x), fmt6(s.score.quality_y),
                               std::to_string(s.score.citations_c),
                               fmt6(s.score.depth_multiplier_d), fmt6(s.score.value_v),
                               s.truncated ? "true" : "false", join_errors(s.errors)});

    nlohmann::json item;
    item["dataset_id"] = s.dataset_id;
    item["breadth_x"] = s.score.breadth_x;
    item["quality_y"] = s.score.quality_y;
    item["citations_c"] = s.score.citations_c;
    item["depth_multiplier_d"] = s.score.depth_multiplier_d;
    item["value_v"] = s.score.value_v;
    item["truncated"] = s.truncated;
    item["depth_counts"] = in.layering.depth_counts;
    item["discipline_counts"] = in.fields.counts;
    item["unknown_authors"] = in.fields.unknown_authors;
    item["url_accessible"] = in.url_accessible;
    item["errors"] = s.errors;
    breakdowns.push_back(std::move(item));
  }

  atomic_write_file(cfg.out_dir / "vscores.csv", csv_text);
  atomic_write_file(cfg.out_dir / "breakdowns.json", breakdowns.dump(2) + "\n");
  out << "wrote " << (cfg.out_dir / "vscores.csv").string() << " (" << scored.size()
      << " datasets, " << errors << " with errors)\n";
  return errors == 0 ? kExitOk : kExitPartial;
}

int cmd_xindex(const RunConfig& cfg, const std::filesystem::path& vscores_path,
               std::ostream& out) {
  auto records = load_manifest(cfg.manifest);
  auto vrows = load_vscores(vscores_path);

  std::map<std::string, double> v_by_id;
  for (const auto& row : vrows) v_by_id[row.dataset_id] = row.score.value_v;

  struct AuthorAgg {
    long datasets = 0;
    double sum = 0.0;
  };
  std::map<std::string, AuthorAgg> by_author;
  for (const auto& rec : records) {
    auto it = v_by_id.find(rec.dataset_id);
    if (it == v_by_id.end()) throw MissingVScoreError(rec.dataset_id);
    for (const auto& author : rec.author_ids) {
      auto& agg = by_author[author];
      ++agg.datasets;
      agg.sum += it->second;  // full credit per co-author, no fractionalization
    }
  }

  std::vector<std::pair<std::string, AuthorAgg>> ordered(by_author.begin(), by_author.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second.sum != b.second.sum) return a.second.sum > b.second.sum;
    return a.first < b.first;
  });

  std::string csv_text = csv::join_row(kXIndexHeader);
  for (const auto& [author, agg] : ordered)
    csv_text += csv::join_row({author, std::to_string(agg.datasets), fmt6(agg.sum)});
  atomic_write_file(cfg.out_dir / "xindex.csv", csv_text);
  out << "wrote " << (cfg.out_dir / "xindex.csv").string() << " (" << ordered.size()
      << " authors)\n";
  return kExitOk;
}

nlohmann::json report_to_json(const ValidationReport& report) {
  nlohmann::json doc;
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"dataset_id", r.dataset_id},
                    {"geometric_mean", r.geometric_mean},
                    {"vscore", r.vscore},
                    {"rater_rank", r.rater_rank},
                    {"vscore_rank", r.vscore_rank}});
  doc["rows"] = rows;
  doc["spearman_rho"] = report.spearman_rho;
  doc["ols_rater"] = fit_to_json(report.ols_rater);
  doc["ols_vscore"] = fit_to_json(report.ols_vscore);
  doc["ols_gm_on_v"] = fit_to_json(report.ols_gm_on_v);
  doc["slope_ratio"] = report.slope_ratio;
  doc["slope_ratio_display"] =
      stats::format_slope_ratio(report.ols_rater.slope, report.ols_vscore.slope);
  return doc;
}

std::string report_to_text(const ValidationReport& report) {
  std::ostringstream out;
  char buf[128];
  out << "validation report\n";
  out << "  datasets:           " << report.rows.size() << "\n";
  std::snprintf(buf, sizeof(buf), "  spearman rho:       %.6f\n", report.spearman_rho);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  gm vs rank:         slope %.4f, intercept %.4f, r2 %.4f\n",
                report.ols_rater.slope, report.ols_rater.intercept, report.ols_rater.r2);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  V vs rank:          slope %.4f, intercept %.4f, r2 %.4f\n",
                report.ols_vscore.slope, report.ols_vscore.intercept, report.ols_vscore.r2);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  gm vs V:            slope %.4f, r2 %.4f\n",
                report.ols_gm_on_v.slope, report.ols_gm_on_v.r2);
  out << buf;
  out << "  slope ratio (gm:V): "
      << stats::format_slope_ratio(report.ols_rater.slope, report.ols_vscore.slope) << " ("
      << fmt6(report.slope_ratio) << ")\n";
  return out.str();
}

int cmd_validate(const RunConfig& cfg, const std::filesystem::path& vscores_path,
                 const std::filesystem::path& raters_path, std::ostream& out) {
  auto vrows = load_vscores(vscores_path);
  auto raters = load_raters(raters_path);

  std::vector<std::pair<std::string, double>> vscores;
  vscores.reserve(vrows.size());
  for (const auto& row : vrows) vscores.emplace_back(row.dataset_id, row.score.value_v);

  auto report = stats::build_report(vscores, raters);

  svg::ScatterPlot rater_plot;
  rater_plot.title = "Rater geometric mean vs rank";
  rater_plot.x_label = "rank (1 = highest rated)";
  rater_plot.y_label = "geometric mean score";
  svg::ScatterPlot vscore_plot;
  vscore_plot.title = "V-score vs rank";
  vscore_plot.x_label = "rank (1 = highest scored)";
  vscore_plot.y_label = "V-score";
  for (const auto& r : report.rows) {
    rater_plot.points.emplace_back(r.rater_rank, r.geometric_mean);
    vscore_plot.points.emplace_back(r.vscore_rank, r.vscore);
  }
  rater_plot.fit = report.ols_rater;
  vscore_plot.fit = report.ols_vscore;

  atomic_write_file(cfg.out_dir / "report.json", report_to_json(report).dump(2) + "\n");
  atomic_write_file(cfg.out_dir / "report.txt", report_to_text(report));
  atomic_write_file(cfg.out_dir / "scatter_rater.svg", rater_plot.render());
  atomic_write_file(cfg.out_dir / "scatter_vscore.svg", vscore_plot.render());

  out << report_to_text(report);
  return kExitOk;
}

int cmd_graph(const RunConfig& cfg, const std::string& seed_work_id, std::ostream& out) {
  cfg.validate();
  auto stack = build_provider(cfg);
  auto layering = graph::build_layers(seed_work_id, cfg.traversal, *stack.cached);

  nlohmann::json doc;
  doc["seed"] = seed_work_id;
  doc["n"] = layering.depth_counts;
  doc["weighted"] = graph::decay_weighted_sum(layering, cfg.traversal);
  doc["truncated"] = layering.truncated;
  doc["depth_cap"] = cfg.traversal.depth_cap;
  doc["decay_base"] = cfg.traversal.decay_base;
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::provider: return kExitProvider;
      case ErrorKind::not_found: return kExitNotFound;
      case ErrorKind::input:
      case ErrorKind::domain: return kExitInput;
    }
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace xidx::cli
