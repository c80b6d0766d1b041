#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detour {

// Base of every error the library throws. kind() is the stable name used in
// diagnostics and in per-cell error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define DETOUR_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

// Network documents and GTFS feeds.
DETOUR_DEFINE_ERROR(SchemaError)
DETOUR_DEFINE_ERROR(DanglingReference)
DETOUR_DEFINE_ERROR(DuplicateId)
DETOUR_DEFINE_ERROR(MissingTable)
DETOUR_DEFINE_ERROR(EmptyFeed)

// Queries over a network.
DETOUR_DEFINE_ERROR(NotFound)
DETOUR_DEFINE_ERROR(UnknownStation)
DETOUR_DEFINE_ERROR(UnknownLine)
DETOUR_DEFINE_ERROR(InvalidZone)
DETOUR_DEFINE_ERROR(NotOnLine)
DETOUR_DEFINE_ERROR(DirectionUnavailable)

// Routing.
DETOUR_DEFINE_ERROR(NoRoute)
DETOUR_DEFINE_ERROR(ForbiddenEndpoint)
DETOUR_DEFINE_ERROR(TooLarge)

// Route format.
DETOUR_DEFINE_ERROR(InvariantViolation)

// LLM pipeline.
DETOUR_DEFINE_ERROR(EmptyPlan)
DETOUR_DEFINE_ERROR(MissingAttachmentFile)
DETOUR_DEFINE_ERROR(TransportError)
DETOUR_DEFINE_ERROR(AuthError)
DETOUR_DEFINE_ERROR(RateLimited)
DETOUR_DEFINE_ERROR(ReplayMiss)

// Scenario harness and reports.
DETOUR_DEFINE_ERROR(MissingNetwork)
DETOUR_DEFINE_ERROR(MissingAttachment)
DETOUR_DEFINE_ERROR(EmptyGroup)
DETOUR_DEFINE_ERROR(MissingColumn)

#undef DETOUR_DEFINE_ERROR

class MalformedRow : public Error {
 public:
  MalformedRow(std::string table, std::size_t row, const std::string& detail)
      : Error("MalformedRow", table + " row " + std::to_string(row) + ": " + detail),
        table_(std::move(table)),
        row_(row) {}

  const std::string& table() const noexcept { return table_; }
  // 1-based index of the data row (the header is row 0).
  std::size_t row() const noexcept { return row_; }

 private:
  std::string table_;
  std::size_t row_;
};

class Ambiguous : public Error {
 public:
  Ambiguous(const std::string& query, std::vector<std::string> candidates)
      : Error("Ambiguous", describe(query, candidates)), candidates_(std::move(candidates)) {}

  const std::vector<std::string>& candidates() const noexcept { return candidates_; }

 private:
  static std::string describe(const std::string& query, const std::vector<std::string>& candidates) {
    std::string msg = "'" + query + "' matches several stations:";
    for (const auto& c : candidates) msg += " " + c;
    return msg;
  }

  std::vector<std::string> candidates_;
};

}  // namespace detour
