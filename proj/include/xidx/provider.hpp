#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xidx/cache.hpp"
#include "xidx/model.hpp"

namespace xidx::provider {

struct ProviderConfig {
  std::string base_url = "https://api.openalex.org";
  std::string polite_contact;  // falls back to XINDEX_MAILTO
  double max_requests_per_second = 10.0;
  double timeout_seconds = 10.0;
  int max_retries = 3;
  std::int64_t per_node_citation_cap = 10'000;
  std::int64_t total_node_budget = 200'000;

  void validate() const;  // positivity checks; budget >= per-node cap
};

struct CitingWorks {
  std::vector<Work> works;
  bool truncated = false;  // per-node cap hit; recorded in cache metadata
};

struct ProviderStats {
  long citing_calls = 0;
  long author_calls = 0;
  long url_calls = 0;
  long total() const { return citing_calls + author_calls + url_calls; }
};

// Uniform contract for scholarly metadata sources. Implementations must be
// safe for concurrent use.
class Provider {
 public:
  virtual ~Provider() = default;

  // Every work citing work_id, up to the per-node cap. Throws NotFoundError
  // for unknown ids, NetworkError after retries, BudgetExceededError once
  // the cumulative node budget is spent.
  virtual CitingWorks fetch_citing_works(const std::string& work_id) = 0;

  // The author's modal field, or "unknown" when unresolvable (soft-fail).
  virtual std::string fetch_author_primary_field(const std::string& author_id) = 0;

  // True iff the URL answers with a final status < 400 within the redirect
  // and timeout limits. Network failures are false, not errors; only a
  // syntactically invalid URL throws MalformedUrlError.
  virtual bool check_url_accessible(const std::string& url) = 0;

  virtual ProviderStats stats() const = 0;
};

// Modal label over (label, weight) pairs; ties break to the
// lexicographically smallest label. Empty input resolves to "unknown".
std::string modal_field(const std::map<std::string, std::int64_t>& weighted);

// Shared budget meter for concrete providers.
class BudgetMeter {
 public:
  explicit BudgetMeter(std::int64_t budget) : budget_(budget) {}
  void charge(std::int64_t nodes);  // throws BudgetExceededError past budget
  std::int64_t spent() const { return spent_.load(); }

 private:
  std::int64_t budget_;
  std::atomic<std::int64_t> spent_{0};
};

// JSON payload codecs shared by the cache, the fixture tree and the wire
// client tests.
nlohmann::json work_to_json(const Work& work);
Work work_from_json(const nlohmann::json& doc);
nlohmann::json citing_works_to_json(const CitingWorks& cw);
CitingWorks citing_works_from_json(const nlohmann::json& doc);

// Deterministic provider over a directory tree of JSON files:
//   citing/<work_id>.json   {"works": [...]}          (absent => NotFound)
//   authors/<author_id>.json {"fields": ["medicine", ...]} (absent => unknown)
//   urls.json                {"<url>": true|false}     (absent url => false)
// Ids must match [A-Za-z0-9._-]+.
class FixtureProvider : public Provider {
 public:
  FixtureProvider(std::filesystem::path root, ProviderConfig config = {});

  CitingWorks fetch_citing_works(const std::string& work_id) override;
  std::string fetch_author_primary_field(const std::string& author_id) override;
  bool check_url_accessible(const std::string& url) override;
  ProviderStats stats() const override;

 private:
  std::filesystem::path root_;
  ProviderConfig config_;
  BudgetMeter budget_;
  mutable std::mutex mutex_;
  ProviderStats stats_;
  std::optional<nlohmann::json> urls_;  // lazily loaded urls.json
};

// Read-through cache around any provider. Fresh entries answer without
// touching the inner provider; stale, missing or corrupt entries fall
// through and are rewritten. Negative citing-works results are cached so a
// warm rerun issues zero inner calls.
class CachedProvider : public Provider {
 public:
  CachedProvider(std::shared_ptr<Provider> inner, std::filesystem::path cache_dir,
                 double max_age_days = 30.0);

  CitingWorks fetch_citing_works(const std::string& work_id) override;
  std::string fetch_author_primary_field(const std::string& author_id) override;
  bool check_url_accessible(const std::string& url) override;
  ProviderStats stats() const override;

  CacheStats cache_stats() const { return cache_.stats(); }
  Provider& inner() { return *inner_; }

 private:
  CacheEntry make_entry(const std::string& kind, const std::string& id,
                        nlohmann::json payload) const;

  std::shared_ptr<Provider> inner_;
  Cache cache_;
  double max_age_days_;
  mutable std::mutex mutex_;
  ProviderStats stats_;
};

// Scheme/host/port/target split used by URL checking and the wire client.
struct ParsedUrl {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;  // path + query, always starts with '/'

  std::string origin() const;  // scheme://host:port
};

// Throws MalformedUrlError unless url is http(s) with a non-empty host.
ParsedUrl parse_url(const std::string& url);

}  // namespace xidx::provider
