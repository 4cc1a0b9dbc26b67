#include "xidx/model.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_set>

namespace xidx {

bool DatasetRecord::has_author(const std::string& author_id) const {
  return std::find(author_ids.begin(), author_ids.end(), author_id) != author_ids.end();
}

std::int64_t CitationLayering::total() const {
  return std::accumulate(depth_counts.begin(), depth_counts.end(), std::int64_t{0});
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_author_ids(const std::string& raw) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto sep = raw.find(';', pos);
    if (sep == std::string::npos) sep = raw.size();
    auto token = trim(raw.substr(pos, sep - pos));
    if (!token.empty()) out.push_back(std::move(token));
    pos = sep + 1;
  }
  return out;
}

}  // namespace

std::vector<DatasetRecord> validate_manifest(const std::vector<ManifestRow>& rows) {
  std::vector<DatasetRecord> records;
  records.reserve(rows.size());
  std::unordered_set<std::string> seen_ids;

  for (const auto& row : rows) {
    DatasetRecord rec;
    rec.dataset_id = trim(row.dataset_id);
    rec.title = trim(row.title);
    rec.seed_work_id = trim(row.seed_work_id);

    if (rec.dataset_id.empty()) throw MissingFieldError(row.row, "dataset_id");
    if (rec.seed_work_id.empty()) throw MissingFieldError(row.row, "seed_work_id");
    if (!seen_ids.insert(rec.dataset_id).second) throw DuplicateIdError(rec.dataset_id);

    auto url = trim(row.access_url);
    if (!url.empty()) rec.access_url = std::move(url);

    rec.author_ids = split_author_ids(row.author_ids);

    auto count = trim(row.citation_override);
    if (!count.empty()) {
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
      if (ec != std::errc{} || ptr != count.data() + count.size() || value < 0)
        throw MalformedCountError(row.row, count);
      rec.scalar_citation_override = value;
    }

    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ManifestRow> records_to_rows(const std::vector<DatasetRecord>& records) {
  std::vector<ManifestRow> rows;
  rows.reserve(records.size());
  std::size_t line = 2;  // header occupies line 1
  for (const auto& rec : records) {
    ManifestRow row;
    row.row = line++;
    row.dataset_id = rec.dataset_id;
    row.title = rec.title;
    row.seed_work_id = rec.seed_work_id;
    row.access_url = rec.access_url.value_or("");
    for (std::size_t i = 0; i < rec.author_ids.size(); ++i) {
      if (i > 0) row.author_ids += ';';
      row.author_ids += rec.author_ids[i];
    }
    if (rec.scalar_citation_override)
      row.citation_override = std::to_string(*rec.scalar_citation_override);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace xidx
