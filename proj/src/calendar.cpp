#include "grocer/calendar.hpp"

#include <cctype>
#include <cstdio>

#include "grocer/errors.hpp"

namespace grocer {

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int dm[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return dm[m - 1];
}

bool all_digits(const std::string& s, size_t from, size_t count) {
  if (from + count > s.size()) return false;
  for (size_t i = from; i < from + count; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

EpochSeconds parse_iso8601(const std::string& text) {
  // "YYYY-MM-DD" with optional "THH:MM:SS" and optional trailing "Z".
  std::string s = text;
  if (!s.empty() && s.back() == 'Z') s.pop_back();
  if (s.size() != 10 && s.size() != 19)
    throw DataError("bad timestamp: '" + text + "'");
  if (!all_digits(s, 0, 4) || s[4] != '-' || !all_digits(s, 5, 2) || s[7] != '-' ||
      !all_digits(s, 8, 2))
    throw DataError("bad timestamp: '" + text + "'");
  int y = std::stoi(s.substr(0, 4));
  int mo = std::stoi(s.substr(5, 2));
  int d = std::stoi(s.substr(8, 2));
  int h = 0, mi = 0, sec = 0;
  if (s.size() == 19) {
    if (s[10] != 'T' || !all_digits(s, 11, 2) || s[13] != ':' || !all_digits(s, 14, 2) ||
        s[16] != ':' || !all_digits(s, 17, 2))
      throw DataError("bad timestamp: '" + text + "'");
    h = std::stoi(s.substr(11, 2));
    mi = std::stoi(s.substr(14, 2));
    sec = std::stoi(s.substr(17, 2));
  }
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h > 23 || mi > 59 || sec > 59)
    throw DataError("bad timestamp: '" + text + "'");
  return days_from_civil(y, mo, d) * kSecondsPerDay + h * 3600 + mi * 60 + sec;
}

std::string format_iso8601(EpochSeconds ts) {
  std::int64_t days = ts / kSecondsPerDay;
  std::int64_t rem = ts % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::string format_iso8601_date(EpochSeconds ts) { return format_iso8601(ts).substr(0, 10); }

}  // namespace grocer
