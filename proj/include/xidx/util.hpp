#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

namespace xidx {

// FNV-1a, 64 bit. Stable across platforms; used for cache filenames.
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

std::string to_iso8601_utc(std::int64_t unix_seconds);

// Percent-encodes everything outside [A-Za-z0-9._~-] (query-value safe).
std::string percent_encode(const std::string& s);

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temp file and renames into place; readers never see
// a partially written file. Throws StorageError on failure.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Warning sink, replaceable in tests. Default prints to stderr.
void warn(const std::string& msg);
void set_warn_handler(std::function<void(const std::string&)> handler);

}  // namespace xidx
