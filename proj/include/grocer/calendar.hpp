#pragma once

#include <cstdint>
#include <string>

namespace grocer {

/// Seconds since the Unix epoch, UTC. All timestamps in the library use this.
using EpochSeconds = std::int64_t;

constexpr std::int64_t kSecondsPerDay = 86400;

/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS" with an optional trailing
/// 'Z'. Date-only strings mean midnight UTC. Throws DataError on anything
/// else (including out-of-range month/day/time fields).
EpochSeconds parse_iso8601(const std::string& text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(EpochSeconds ts);

/// Formats the calendar-date part only, "YYYY-MM-DD".
std::string format_iso8601_date(EpochSeconds ts);

}  // namespace grocer
