#include "xidx/openalex.hpp"

#include <httplib.h>

#include <cstdlib>
#include <map>

#include "xidx/errors.hpp"
#include "xidx/util.hpp"

namespace xidx::provider {

namespace {

constexpr int kMaxRedirects = 3;
constexpr int kPerPage = 200;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

std::string normalize_openalex_id(const std::string& id) {
  static const std::string prefix = "https://openalex.org/";
  if (id.rfind(prefix, 0) == 0) return id.substr(prefix.size());
  return id;
}

struct OpenAlexClient::Impl {
  ProviderConfig config;
  std::shared_ptr<Clock> clock;
  ParsedUrl api;
  std::string mailto;
  std::string api_key;
  RateLimiter limiter;
  BudgetMeter budget;
  mutable std::mutex mutex;
  ProviderStats stats;

  Impl(ProviderConfig cfg, std::shared_ptr<Clock> clk)
      : config(std::move(cfg)),
        clock(std::move(clk)),
        api(parse_url(config.base_url)),
        mailto(env_or("XINDEX_MAILTO", config.polite_contact)),
        api_key(env_or("XINDEX_API_KEY", "")),
        limiter(config.max_requests_per_second, clock),
        budget(config.total_node_budget) {
    config.validate();
  }

  std::unique_ptr<httplib::Client> make_client(const std::string& origin) const {
    auto cli = std::make_unique<httplib::Client>(origin);
    auto timeout = std::chrono::milliseconds(static_cast<long>(config.timeout_seconds * 1000));
    cli->set_connection_timeout(timeout);
    cli->set_read_timeout(timeout);
    cli->set_follow_location(false);  // redirects handled explicitly
    return cli;
  }

  std::string with_credentials(std::string target) const {
    char sep = target.find('?') == std::string::npos ? '?' : '&';
    if (!mailto.empty()) {
      target += sep;
      target += "mailto=" + percent_encode(mailto);
      sep = '&';
    }
    if (!api_key.empty()) {
      target += sep;
      target += "api_key=" + percent_encode(api_key);
    }
    return target;
  }

  // One API GET with rate limiting and backoff. `what` names the resource in
  // errors; credentials never appear in messages.
  httplib::Result api_get(const std::string& target, const std::string& what) {
    auto cli = make_client(api.origin());
    const auto full = with_credentials(target);
    for (int attempt = 0;; ++attempt) {
      limiter.acquire();
      auto res = cli->Get(full);
      const bool transport_failure = !res;
      if (!transport_failure && !retryable_status(res->status)) return res;
      if (attempt >= config.max_retries) {
        if (transport_failure)
          throw NetworkError("request for " + what + " failed: " + httplib::to_string(res.error()));
        throw NetworkError("request for " + what + " failed with HTTP " +
                           std::to_string(res->status) + " after " +
                           std::to_string(attempt + 1) + " attempts");
      }
      auto delay = std::chrono::milliseconds(500L << attempt);
      warn("retrying " + what + " in " + std::to_string(delay.count()) + " ms");
      clock->sleep_for(delay);
    }
  }
};

OpenAlexClient::OpenAlexClient(ProviderConfig config, std::shared_ptr<Clock> clock)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(clock))) {}

OpenAlexClient::~OpenAlexClient() = default;

CitingWorks OpenAlexClient::fetch_citing_works(const std::string& work_id) {
  {
    std::lock_guard lock(impl_->mutex);
    ++impl_->stats.citing_calls;
  }
  CitingWorks out;
  std::string cursor = "*";
  while (true) {
    auto target = "/works?filter=cites:" + percent_encode(work_id) +
                  "&per-page=" + std::to_string(kPerPage) + "&cursor=" + percent_encode(cursor);
    auto res = impl_->api_get(target, "citing works of " + work_id);
    if (res->status == 404) throw NotFoundError(work_id);
    if (res->status >= 400)
      throw NetworkError("citing works of " + work_id + ": HTTP " + std::to_string(res->status));

    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw NetworkError("citing works of " + work_id + ": bad JSON: " + e.what());
    }

    std::int64_t added = 0;
    for (const auto& item : doc.value("results", nlohmann::json::array())) {
      if (static_cast<std::int64_t>(out.works.size()) >= impl_->config.per_node_citation_cap) {
        out.truncated = true;
        break;
      }
      Work w;
      w.work_id = normalize_openalex_id(item.value("id", ""));
      if (item.contains("publication_year") && item["publication_year"].is_number())
        w.year = item["publication_year"].get<int>();
      for (const auto& auth : item.value("authorships", nlohmann::json::array())) {
        if (!auth.contains("author")) continue;
        auto id = normalize_openalex_id(auth["author"].value("id", ""));
        if (!id.empty()) w.coauthors.push_back({id, kUnknownField});
      }
      if (w.work_id.empty()) continue;
      out.works.push_back(std::move(w));
      ++added;
    }
    impl_->budget.charge(added);

    if (out.truncated) break;
    auto next = doc.contains("meta") ? doc["meta"].value("next_cursor", nlohmann::json{})
                                     : nlohmann::json{};
    if (!next.is_string() || next.get<std::string>().empty()) break;
    if (doc.value("results", nlohmann::json::array()).empty()) break;
    cursor = next.get<std::string>();
  }
  return out;
}

std::string OpenAlexClient::fetch_author_primary_field(const std::string& author_id) {
  {
    std::lock_guard lock(impl_->mutex);
    ++impl_->stats.author_calls;
  }
  auto res = impl_->api_get("/authors/" + percent_encode(author_id), "author " + author_id);
  if (res->status == 404) return kUnknownField;  // soft-fail: breadth degrades
  if (res->status >= 400)
    throw NetworkError("author " + author_id + ": HTTP " + std::to_string(res->status));

  std::map<std::string, std::int64_t> tally;
  try {
    auto doc = nlohmann::json::parse(res->body);
    for (const auto& topic : doc.value("topics", nlohmann::json::array())) {
      if (!topic.contains("field")) continue;
      auto label = topic["field"].value("display_name", "");
      if (label.empty()) continue;
      tally[label] += topic.value("count", std::int64_t{1});
    }
  } catch (const nlohmann::json::exception& e) {
    warn("author " + author_id + ": bad JSON (" + std::string(e.what()) + "), treating as unknown");
    return kUnknownField;
  }
  return modal_field(tally);
}

bool OpenAlexClient::check_url_accessible(const std::string& url) {
  auto current = parse_url(url);
  {
    std::lock_guard lock(impl_->mutex);
    ++impl_->stats.url_calls;
  }
  for (int hop = 0; hop <= kMaxRedirects; ++hop) {
    impl_->limiter.acquire();
    auto cli = impl_->make_client(current.origin());
    auto res = cli->Head(current.target);
    if (res && res->status == 405) res = cli->Get(current.target);
    if (!res) return false;  // inaccessibility is the signal, not an error

    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      auto location = res->get_header_value("Location");
      try {
        if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) {
          current = parse_url(location);
        } else if (!location.empty() && location[0] == '/') {
          current.target = location;
        } else {
          return false;  // relative redirects outside the root are not chased
        }
      } catch (const MalformedUrlError&) {
        return false;
      }
      continue;
    }
    return res->status < 400;
  }
  return false;  // too many redirects
}

ProviderStats OpenAlexClient::stats() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->stats;
}

}  // namespace xidx::provider
