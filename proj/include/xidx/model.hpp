#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xidx/errors.hpp"

namespace xidx {

// Reserved sentinel for authors whose discipline could not be resolved.
// Manifests and providers must never emit it as a real field label.
inline constexpr const char* kUnknownField = "unknown";

struct Coauthor {
  std::string author_id;
  std::string field_label = kUnknownField;

  bool operator==(const Coauthor&) const = default;
};

// A publication node in the citation graph.
struct Work {
  std::string work_id;
  std::optional<int> year;
  std::vector<Coauthor> coauthors;

  bool operator==(const Work&) const = default;
};

// One shared dataset as declared in a manifest.
struct DatasetRecord {
  std::string dataset_id;
  std::string title;
  std::string seed_work_id;
  std::optional<std::string> access_url;
  std::vector<std::string> author_ids;
  std::optional<std::int64_t> scalar_citation_override;

  bool has_author(const std::string& author_id) const;
  bool operator==(const DatasetRecord&) const = default;
};

// Per-field counts of unique co-authors. "unknown" never appears as a key;
// authors without a resolvable field are tallied in unknown_authors instead.
struct DisciplineDistribution {
  std::map<std::string, std::int64_t> counts;
  std::int64_t unknown_authors = 0;

  std::int64_t unique_fields() const { return static_cast<std::int64_t>(counts.size()); }
  bool operator==(const DisciplineDistribution&) const = default;
};

// Citing-work counts per citation distance from the seed, n_1..n_depth_cap.
// A work is counted once, at its minimal depth; the seed itself is excluded.
struct CitationLayering {
  std::vector<std::int64_t> depth_counts;
  int depth_cap = 0;
  bool truncated = false;

  std::int64_t direct_citers() const { return depth_counts.empty() ? 0 : depth_counts[0]; }
  std::int64_t total() const;
  bool operator==(const CitationLayering&) const = default;
};

struct VScoreBreakdown {
  double breadth_x = 0.0;
  double quality_y = 0.0;
  std::int64_t citations_c = 0;
  double depth_multiplier_d = 0.0;
  double value_v = 0.0;

  bool operator==(const VScoreBreakdown&) const = default;
};

// Aggregate scores from the five raters, each on a 0-100 scale.
struct RaterScoreRow {
  std::string dataset_id;
  std::array<double, 5> scores{};
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
  bool degenerate = false;  // constant response; r2 reported as 0
};

struct ValidationRow {
  std::string dataset_id;
  double geometric_mean = 0.0;
  double vscore = 0.0;
  double rater_rank = 0.0;
  double vscore_rank = 0.0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;           // sorted by dataset_id
  double spearman_rho = 0.0;
  RegressionFit ols_rater;                   // geometric mean vs its rank position
  RegressionFit ols_vscore;                  // V vs its rank position
  RegressionFit ols_gm_on_v;                 // geometric mean vs V
  double slope_ratio = 0.0;                  // rater slope / vscore slope
};

// One parsed (but not yet validated) manifest line. All cells are raw CSV
// text; `row` is the 1-based line number for error reporting.
struct ManifestRow {
  std::size_t row = 0;
  std::string dataset_id;
  std::string title;
  std::string seed_work_id;
  std::string access_url;
  std::string author_ids;         // ';'-separated
  std::string citation_override;  // empty or non-negative integer
};

// Validates rows into records. Throws DuplicateIdError, MissingFieldError
// or MalformedCountError. Idempotent: validating the rendered output of a
// record list yields the same records.
std::vector<DatasetRecord> validate_manifest(const std::vector<ManifestRow>& rows);

// Renders records back to rows (the inverse used by the idempotence check
// and by manifest rewriting).
std::vector<ManifestRow> records_to_rows(const std::vector<DatasetRecord>& records);

}  // namespace xidx
