#pragma once

#include <memory>
#include <string>

#include "xidx/clock.hpp"
#include "xidx/provider.hpp"

namespace xidx::provider {

// REST client for OpenAlex-compatible endpoints:
//   GET /works?filter=cites:<id>&per-page=N&cursor=<c>   (cursor pagination)
//   GET /authors/<id>                                    (modal field from topics)
// Requests are rate limited; 429 and 5xx responses retry with exponential
// backoff. The polite contact email and optional API key come from the
// config or the XINDEX_MAILTO / XINDEX_API_KEY environment variables and
// are never logged.
class OpenAlexClient : public Provider {
 public:
  explicit OpenAlexClient(ProviderConfig config, std::shared_ptr<Clock> clock = system_clock());
  ~OpenAlexClient() override;

  CitingWorks fetch_citing_works(const std::string& work_id) override;
  std::string fetch_author_primary_field(const std::string& author_id) override;
  bool check_url_accessible(const std::string& url) override;
  ProviderStats stats() const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Strips a leading "https://openalex.org/" prefix so entity ids are stored
// in their short form ("W123", "A456").
std::string normalize_openalex_id(const std::string& id);

}  // namespace xidx::provider
