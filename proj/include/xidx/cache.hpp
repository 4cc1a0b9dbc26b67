#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace xidx::provider {

// One cached provider response. Entries live as individual JSON documents
// in the cache directory, one file per (kind, id) key.
struct CacheEntry {
  std::string kind;  // citing_works | author_fields | url_check | citation_count
  std::string id;
  std::int64_t fetched_at_unix = 0;
  nlohmann::json payload;
};

struct CacheStats {
  long hits = 0;
  long misses = 0;
  long stale = 0;
  long corrupt = 0;
};

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  // Returns the entry iff present and younger than max_age_days.
  // Corrupt or future-dated files count as misses and emit a warning.
  std::optional<CacheEntry> get(const std::string& kind, const std::string& id,
                                double max_age_days);

  // Atomic overwrite (temp file + rename); last writer wins.
  void put(const CacheEntry& entry);

  CacheStats stats() const;
  const std::filesystem::path& dir() const { return dir_; }

  static std::string filename_for(const std::string& kind, const std::string& id);

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  CacheStats stats_;
};

}  // namespace xidx::provider
