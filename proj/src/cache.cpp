#include "xidx/cache.hpp"

#include <chrono>

#include "xidx/errors.hpp"
#include "xidx/util.hpp"

namespace xidx::provider {

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw StorageError("cannot create cache directory " + dir_.string());
}

std::string Cache::filename_for(const std::string& kind, const std::string& id) {
  return fnv1a64_hex(kind + ":" + id) + ".json";
}

std::optional<CacheEntry> Cache::get(const std::string& kind, const std::string& id,
                                     double max_age_days) {
  auto path = dir_ / filename_for(kind, id);
  std::lock_guard lock(mutex_);
  if (!std::filesystem::exists(path)) {
    ++stats_.misses;
    return std::nullopt;
  }
  CacheEntry entry;
  try {
    auto doc = nlohmann::json::parse(read_file(path));
    entry.kind = doc.at("kind").get<std::string>();
    entry.id = doc.at("id").get<std::string>();
    entry.fetched_at_unix = doc.at("fetched_at_unix").get<std::int64_t>();
    entry.payload = doc.at("payload");
  } catch (const std::exception& e) {
    ++stats_.corrupt;
    ++stats_.misses;
    warn("corrupt cache entry " + path.string() + ": " + e.what());
    return std::nullopt;
  }
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const auto age_seconds = now - entry.fetched_at_unix;
  if (age_seconds < 0) {
    ++stats_.corrupt;
    ++stats_.misses;
    warn("future-dated cache entry " + path.string());
    return std::nullopt;
  }
  if (static_cast<double>(age_seconds) > max_age_days * 86400.0) {
    ++stats_.stale;
    ++stats_.misses;
    return std::nullopt;
  }
  ++stats_.hits;
  return entry;
}

void Cache::put(const CacheEntry& entry) {
  nlohmann::json doc;
  doc["kind"] = entry.kind;
  doc["id"] = entry.id;
  doc["fetched_at_unix"] = entry.fetched_at_unix;
  doc["fetched_at"] = to_iso8601_utc(entry.fetched_at_unix);
  doc["payload"] = entry.payload;
  auto path = dir_ / filename_for(entry.kind, entry.id);
  std::lock_guard lock(mutex_);
  atomic_write_file(path, doc.dump(2) + "\n");
}

CacheStats Cache::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

}  // namespace xidx::provider
