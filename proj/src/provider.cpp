#include "xidx/provider.hpp"

#include <algorithm>
#include <chrono>

#include "xidx/errors.hpp"
#include "xidx/util.hpp"

namespace xidx::provider {

void ProviderConfig::validate() const {
  if (max_requests_per_second <= 0) throw DomainError("max_requests_per_second must be positive");
  if (timeout_seconds <= 0) throw DomainError("timeout_seconds must be positive");
  if (max_retries < 0) throw DomainError("max_retries must be non-negative");
  if (per_node_citation_cap <= 0) throw DomainError("per_node_citation_cap must be positive");
  if (total_node_budget <= 0) throw DomainError("total_node_budget must be positive");
  if (total_node_budget < per_node_citation_cap)
    throw DomainError("total_node_budget must be >= per_node_citation_cap");
}

std::string modal_field(const std::map<std::string, std::int64_t>& weighted) {
  std::string best;
  std::int64_t best_weight = 0;
  for (const auto& [label, weight] : weighted) {
    if (label.empty() || label == kUnknownField || weight <= 0) continue;
    // map iteration is ascending, so strict > keeps the smallest label on ties
    if (weight > best_weight) {
      best = label;
      best_weight = weight;
    }
  }
  return best.empty() ? kUnknownField : best;
}

void BudgetMeter::charge(std::int64_t nodes) {
  if (spent_.fetch_add(nodes) + nodes > budget_) throw BudgetExceededError(budget_);
}

nlohmann::json work_to_json(const Work& work) {
  nlohmann::json doc;
  doc["id"] = work.work_id;
  if (work.year)
    doc["year"] = *work.year;
  else
    doc["year"] = nullptr;
  auto authors = nlohmann::json::array();
  for (const auto& ca : work.coauthors)
    authors.push_back({{"id", ca.author_id}, {"field", ca.field_label}});
  doc["authors"] = authors;
  return doc;
}

Work work_from_json(const nlohmann::json& doc) {
  Work work;
  work.work_id = doc.at("id").get<std::string>();
  if (doc.contains("year") && !doc["year"].is_null()) work.year = doc["year"].get<int>();
  for (const auto& a : doc.value("authors", nlohmann::json::array())) {
    Coauthor ca;
    ca.author_id = a.at("id").get<std::string>();
    ca.field_label = a.value("field", std::string(kUnknownField));
    if (ca.field_label.empty()) ca.field_label = kUnknownField;
    work.coauthors.push_back(std::move(ca));
  }
  return work;
}

nlohmann::json citing_works_to_json(const CitingWorks& cw) {
  nlohmann::json doc;
  doc["truncated"] = cw.truncated;
  auto works = nlohmann::json::array();
  for (const auto& w : cw.works) works.push_back(work_to_json(w));
  doc["works"] = works;
  return doc;
}

CitingWorks citing_works_from_json(const nlohmann::json& doc) {
  CitingWorks cw;
  cw.truncated = doc.value("truncated", false);
  for (const auto& w : doc.at("works")) cw.works.push_back(work_from_json(w));
  return cw;
}

namespace {

bool valid_fixture_id(const std::string& id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '.' || c == '_' || c == '-';
  });
}

std::int64_t now_unix() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

FixtureProvider::FixtureProvider(std::filesystem::path root, ProviderConfig config)
    : root_(std::move(root)), config_(std::move(config)), budget_(config_.total_node_budget) {
  config_.validate();
  if (!std::filesystem::is_directory(root_))
    throw StorageError("fixture directory not found: " + root_.string());
}

CitingWorks FixtureProvider::fetch_citing_works(const std::string& work_id) {
  {
    std::lock_guard lock(mutex_);
    ++stats_.citing_calls;
  }
  if (!valid_fixture_id(work_id)) throw NotFoundError(work_id);
  auto path = root_ / "citing" / (work_id + ".json");
  if (!std::filesystem::exists(path)) throw NotFoundError(work_id);

  CitingWorks cw;
  try {
    cw = citing_works_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw StorageError("bad fixture file " + path.string() + ": " + e.what());
  }
  if (static_cast<std::int64_t>(cw.works.size()) > config_.per_node_citation_cap) {
    cw.works.resize(static_cast<std::size_t>(config_.per_node_citation_cap));
    cw.truncated = true;
  }
  budget_.charge(static_cast<std::int64_t>(cw.works.size()));
  return cw;
}

std::string FixtureProvider::fetch_author_primary_field(const std::string& author_id) {
  {
    std::lock_guard lock(mutex_);
    ++stats_.author_calls;
  }
  if (!valid_fixture_id(author_id)) return kUnknownField;
  auto path = root_ / "authors" / (author_id + ".json");
  if (!std::filesystem::exists(path)) return kUnknownField;

  std::map<std::string, std::int64_t> tally;
  try {
    auto doc = nlohmann::json::parse(read_file(path));
    for (const auto& f : doc.value("fields", nlohmann::json::array()))
      ++tally[f.get<std::string>()];
  } catch (const nlohmann::json::exception& e) {
    warn("bad fixture author file " + path.string() + ": " + e.what());
    return kUnknownField;
  }
  return modal_field(tally);
}

bool FixtureProvider::check_url_accessible(const std::string& url) {
  parse_url(url);  // MalformedUrlError on bad syntax, same as the live path
  std::lock_guard lock(mutex_);
  ++stats_.url_calls;
  if (!urls_) {
    auto path = root_ / "urls.json";
    if (std::filesystem::exists(path)) {
      try {
        urls_ = nlohmann::json::parse(read_file(path));
      } catch (const nlohmann::json::exception& e) {
        warn("bad fixture urls.json: " + std::string(e.what()));
        urls_ = nlohmann::json::object();
      }
    } else {
      urls_ = nlohmann::json::object();
    }
  }
  return urls_->value(url, false);
}

ProviderStats FixtureProvider::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

CachedProvider::CachedProvider(std::shared_ptr<Provider> inner, std::filesystem::path cache_dir,
                               double max_age_days)
    : inner_(std::move(inner)), cache_(std::move(cache_dir)), max_age_days_(max_age_days) {}

CacheEntry CachedProvider::make_entry(const std::string& kind, const std::string& id,
                                      nlohmann::json payload) const {
  return CacheEntry{kind, id, now_unix(), std::move(payload)};
}

CitingWorks CachedProvider::fetch_citing_works(const std::string& work_id) {
  {
    std::lock_guard lock(mutex_);
    ++stats_.citing_calls;
  }
  if (auto hit = cache_.get("citing_works", work_id, max_age_days_)) {
    if (hit->payload.value("not_found", false)) throw NotFoundError(work_id);
    return citing_works_from_json(hit->payload);
  }
  CitingWorks cw;
  try {
    cw = inner_->fetch_citing_works(work_id);
  } catch (const NotFoundError&) {
    cache_.put(make_entry("citing_works", work_id, nlohmann::json{{"not_found", true}}));
    throw;
  }
  cache_.put(make_entry("citing_works", work_id, citing_works_to_json(cw)));
  return cw;
}

std::string CachedProvider::fetch_author_primary_field(const std::string& author_id) {
  {
    std::lock_guard lock(mutex_);
    ++stats_.author_calls;
  }
  if (auto hit = cache_.get("author_fields", author_id, max_age_days_))
    return hit->payload.at("field").get<std::string>();
  auto field = inner_->fetch_author_primary_field(author_id);
  cache_.put(make_entry("author_fields", author_id, nlohmann::json{{"field", field}}));
  return field;
}

bool CachedProvider::check_url_accessible(const std::string& url) {
  parse_url(url);
  {
    std::lock_guard lock(mutex_);
    ++stats_.url_calls;
  }
  if (auto hit = cache_.get("url_check", url, max_age_days_))
    return hit->payload.at("accessible").get<bool>();
  bool ok = inner_->check_url_accessible(url);
  cache_.put(make_entry("url_check", url, nlohmann::json{{"accessible", ok}}));
  return ok;
}

ProviderStats CachedProvider::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

std::string ParsedUrl::origin() const {
  return scheme + "://" + host + ":" + std::to_string(port);
}

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl out;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw MalformedUrlError(url);
  out.scheme = url.substr(0, scheme_end);
  std::transform(out.scheme.begin(), out.scheme.end(), out.scheme.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (out.scheme != "http" && out.scheme != "https") throw MalformedUrlError(url);

  auto rest = url.substr(scheme_end + 3);
  auto path_start = rest.find('/');
  auto authority = path_start == std::string::npos ? rest : rest.substr(0, path_start);
  out.target = path_start == std::string::npos ? "/" : rest.substr(path_start);

  auto colon = authority.rfind(':');
  if (colon != std::string::npos) {
    out.host = authority.substr(0, colon);
    auto port_str = authority.substr(colon + 1);
    try {
      std::size_t used = 0;
      out.port = std::stoi(port_str, &used);
      if (used != port_str.size() || out.port <= 0 || out.port > 65535)
        throw MalformedUrlError(url);
    } catch (const std::logic_error&) {
      throw MalformedUrlError(url);
    }
  } else {
    out.host = authority;
    out.port = out.scheme == "https" ? 443 : 80;
  }
  if (out.host.empty()) throw MalformedUrlError(url);
  return out;
}

}  // namespace xidx::provider
