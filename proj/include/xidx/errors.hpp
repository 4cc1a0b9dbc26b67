#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xidx {

// Coarse error classes; the CLI maps them onto exit codes
// (input -> 2, provider -> 3, not_found -> 4, domain -> 2).
enum class ErrorKind { input, provider, not_found, domain };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DuplicateIdError : Error {
  explicit DuplicateIdError(const std::string& id)
      : Error(ErrorKind::input, "duplicate dataset_id: " + id) {}
};

struct MissingFieldError : Error {
  MissingFieldError(std::size_t row, const std::string& column)
      : Error(ErrorKind::input,
              "row " + std::to_string(row) + ": missing required field '" + column + "'") {}
};

struct MalformedCountError : Error {
  MalformedCountError(std::size_t row, const std::string& value)
      : Error(ErrorKind::input,
              "row " + std::to_string(row) + ": citation_override '" + value +
                  "' is not a non-negative integer") {}
};

struct NetworkError : Error {
  explicit NetworkError(const std::string& msg) : Error(ErrorKind::provider, msg) {}
};

struct NotFoundError : Error {
  explicit NotFoundError(const std::string& id)
      : Error(ErrorKind::not_found, "not found: " + id), id(id) {}
  std::string id;
};

struct SeedNotFoundError : Error {
  explicit SeedNotFoundError(const std::string& id)
      : Error(ErrorKind::not_found, "seed work not found: " + id), id(id) {}
  std::string id;
};

struct BudgetExceededError : Error {
  explicit BudgetExceededError(std::int64_t budget)
      : Error(ErrorKind::provider,
              "total node budget of " + std::to_string(budget) + " exhausted") {}
};

struct MalformedUrlError : Error {
  explicit MalformedUrlError(const std::string& url)
      : Error(ErrorKind::input, "malformed url: " + url) {}
};

struct StorageError : Error {
  explicit StorageError(const std::string& msg) : Error(ErrorKind::provider, msg) {}
};

struct DimensionMismatchError : Error {
  DimensionMismatchError(std::size_t got, std::size_t want)
      : Error(ErrorKind::domain, "layering depth " + std::to_string(got) +
                                     " does not match depth cap " + std::to_string(want)) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(ErrorKind::domain, msg) {}
};

struct WrongArityError : Error {
  explicit WrongArityError(std::size_t got)
      : Error(ErrorKind::domain, "expected exactly 5 rater scores, got " + std::to_string(got)) {}
};

struct NegativeScoreError : Error {
  explicit NegativeScoreError(double value)
      : Error(ErrorKind::domain, "rater score must be >= 0, got " + std::to_string(value)) {}
};

struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& msg) : Error(ErrorKind::domain, msg) {}
};

struct IdMismatchError : Error {
  explicit IdMismatchError(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

struct NoSourceError : Error {
  NoSourceError() : Error(ErrorKind::domain, "no citation source: neither layering nor override") {}
};

struct MissingVScoreError : Error {
  explicit MissingVScoreError(const std::string& id)
      : Error(ErrorKind::input, "manifest dataset has no V-score row: " + id) {}
};

}  // namespace xidx
