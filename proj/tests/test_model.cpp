#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "xidx/model.hpp"

using namespace xidx;

namespace {

ManifestRow make_row(std::size_t line, const std::string& id, const std::string& seed) {
  ManifestRow row;
  row.row = line;
  row.dataset_id = id;
  row.title = "dataset " + id;
  row.seed_work_id = seed;
  return row;
}

}  // namespace

TEST_CASE("validate_manifest accepts well-formed rows") {
  std::vector<ManifestRow> rows;
  for (int i = 1; i <= 15; ++i) {
    auto row = make_row(static_cast<std::size_t>(i + 1), "ds" + std::to_string(i),
                        "W" + std::to_string(i));
    row.access_url = "https://example.org/" + std::to_string(i);
    row.author_ids = "A1;A2";
    row.citation_override = std::to_string(i * 10);
    rows.push_back(row);
  }
  auto records = validate_manifest(rows);
  REQUIRE(records.size() == 15);
  CHECK(records[0].dataset_id == "ds1");
  CHECK(records[0].author_ids == std::vector<std::string>{"A1", "A2"});
  CHECK(records[0].scalar_citation_override == 10);
  CHECK(records[14].access_url == "https://example.org/15");
}

TEST_CASE("validate_manifest on empty input") {
  CHECK(validate_manifest({}).empty());
}

TEST_CASE("duplicate dataset ids are rejected") {
  std::vector<ManifestRow> rows{make_row(2, "ds1", "W1"), make_row(3, "ds1", "W2")};
  CHECK_THROWS_AS(validate_manifest(rows), DuplicateIdError);
}

TEST_CASE("missing required fields name the column") {
  std::vector<ManifestRow> rows{make_row(2, "", "W1")};
  CHECK_THROWS_WITH_AS(validate_manifest(rows), doctest::Contains("dataset_id"),
                       MissingFieldError);

  rows = {make_row(2, "ds1", "")};
  CHECK_THROWS_WITH_AS(validate_manifest(rows), doctest::Contains("seed_work_id"),
                       MissingFieldError);
}

TEST_CASE("malformed citation overrides are rejected") {
  auto row = make_row(2, "ds1", "W1");
  row.citation_override = "abc";
  CHECK_THROWS_AS(validate_manifest({row}), MalformedCountError);
  row.citation_override = "-4";
  CHECK_THROWS_AS(validate_manifest({row}), MalformedCountError);
  row.citation_override = "12x";
  CHECK_THROWS_AS(validate_manifest({row}), MalformedCountError);
}

TEST_CASE("author id lists are split on semicolons and trimmed") {
  auto row = make_row(2, "ds1", "W1");
  row.author_ids = " A1 ; A2;;A3 ";
  auto records = validate_manifest({row});
  CHECK(records[0].author_ids == std::vector<std::string>{"A1", "A2", "A3"});
}

TEST_CASE("validate_manifest is idempotent") {
  std::mt19937 rng(7);
  std::vector<ManifestRow> rows;
  for (int i = 0; i < 40; ++i) {
    auto row = make_row(static_cast<std::size_t>(i + 2), "ds" + std::to_string(i),
                        "W" + std::to_string(i));
    if (rng() % 2) row.access_url = "https://example.org/" + std::to_string(i);
    if (rng() % 3) row.author_ids = "A" + std::to_string(rng() % 9);
    if (rng() % 2) row.citation_override = std::to_string(rng() % 10000);
    rows.push_back(row);
  }
  auto once = validate_manifest(rows);
  auto twice = validate_manifest(records_to_rows(once));
  CHECK(once == twice);
}

TEST_CASE("vscore identity holds on the breakdown type") {
  VScoreBreakdown b;
  b.breadth_x = 2.1;
  b.quality_y = 1.0;
  b.citations_c = 250;
  b.depth_multiplier_d = 1.4;
  b.value_v = b.breadth_x + b.quality_y + b.depth_multiplier_d * std::log1p(250.0);
  CHECK(std::abs(b.value_v - (b.breadth_x + b.quality_y +
                              b.depth_multiplier_d * std::log(1.0 + 250.0))) < 1e-12);
}

TEST_CASE("layering reachability: empty first layer means empty everything") {
  CitationLayering layering;
  layering.depth_cap = 4;
  layering.depth_counts = {0, 0, 0, 0};
  CHECK(layering.total() == 0);
  CHECK(layering.direct_citers() == 0);
}
