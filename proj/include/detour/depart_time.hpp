#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <unicode/gregocal.h>
#include <unicode/timezone.h>
#include <unicode/unistr.h>

#include "detour/errors.hpp"

namespace detour {

// A wall-clock departure in a named IANA zone, pinned to an instant.
struct DepartTime {
  std::string local;  // "YYYY-MM-DDTHH:MM" or with ":SS"
  std::string zone;
  std::int64_t epoch_s = 0;

  friend bool operator==(const DepartTime&, const DepartTime&) = default;
};

inline DepartTime make_depart_time(const std::string& local, const std::string& zone) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int consumed = 0;
  const int fields = std::sscanf(local.c_str(), "%4d-%2d-%2dT%2d:%2d%n:%2d%n", &y, &mo, &d, &h, &mi, &consumed, &s,
                                 &consumed);
  if (fields < 5 || consumed != static_cast<int>(local.size()) || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 ||
      mi > 59 || s > 59) {
    throw SchemaError("bad local time '" + local + "', expected YYYY-MM-DDTHH:MM[:SS]");
  }
  std::unique_ptr<icu::TimeZone> tz(icu::TimeZone::createTimeZone(icu::UnicodeString::fromUTF8(zone)));
  icu::UnicodeString id;
  tz->getID(id);
  if (id == icu::UnicodeString(UCAL_UNKNOWN_ZONE_ID)) throw SchemaError("unknown time zone '" + zone + "'");

  UErrorCode status = U_ZERO_ERROR;
  icu::GregorianCalendar cal(*tz, status);
  cal.clear();
  cal.set(y, mo - 1, d, h, mi, s);
  const UDate ms = cal.getTime(status);
  if (U_FAILURE(status)) throw SchemaError("cannot place '" + local + "' in zone '" + zone + "'");
  return DepartTime{local, zone, static_cast<std::int64_t>(ms / 1000.0)};
}

// May 1st 2024, 1:30 PM, New York local time.
inline DepartTime default_depart_time() { return make_depart_time("2024-05-01T13:30", "America/New_York"); }

}  // namespace detour
