#include "procscope/timestamp.hpp"

#include <array>
#include <cstdio>

#include "procscope/error.hpp"

namespace procscope {
namespace {

constexpr std::int64_t kMillisPerDay = 86'400'000;

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's
// days_from_civil).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2 ? 1 : 0), m, d};
}

constexpr bool is_leap(std::int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr unsigned days_in_month(std::int64_t y, unsigned m) {
  constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30,
                                           31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  // Reads exactly n digits.
  bool digits(int n, int& out) {
    out = 0;
    for (int i = 0; i < n; ++i) {
      const char c = peek();
      if (c < '0' || c > '9') return false;
      out = out * 10 + (c - '0');
      ++pos_;
    }
    return true;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

bool try_parse_iso8601(std::string_view text, Timestamp& out) {
  Cursor c(text);
  int year = 0, month = 0, day = 0;
  if (!c.digits(4, year) || !c.eat('-') || !c.digits(2, month) || !c.eat('-') ||
      !c.digits(2, day)) {
    return false;
  }
  if (month < 1 || month > 12) return false;
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, month)) {
    return false;
  }

  int hour = 0, minute = 0, second = 0, millis = 0;
  if (!c.done()) {
    if (!c.eat('T') && !c.eat('t') && !c.eat(' ')) return false;
    if (!c.digits(2, hour) || !c.eat(':') || !c.digits(2, minute)) return false;
    if (c.eat(':')) {
      if (!c.digits(2, second)) return false;
      if (c.eat('.') || c.eat(',')) {
        int first = 0;
        if (!c.digits(1, first)) return false;
        int scale = 100;
        millis = first * scale;
        while (c.peek() >= '0' && c.peek() <= '9') {
          int d = 0;
          c.digits(1, d);
          scale /= 10;
          millis += d * scale;
        }
      }
    }
  }
  if (hour > 23 || minute > 59 || second > 59) return false;

  std::int64_t offset_minutes = 0;
  if (!c.done()) {
    if (c.eat('Z') || c.eat('z')) {
      // UTC
    } else {
      const char sign = c.peek();
      if (sign != '+' && sign != '-') return false;
      c.eat(sign);
      int oh = 0, om = 0;
      if (!c.digits(2, oh)) return false;
      if (c.eat(':')) {
        if (!c.digits(2, om)) return false;
      } else if (!c.done()) {
        if (!c.digits(2, om)) return false;
      }
      if (oh > 23 || om > 59) return false;
      offset_minutes = (sign == '+' ? 1 : -1) * (oh * 60 + om);
    }
  }
  if (!c.done()) return false;

  const std::int64_t days = days_from_civil(year, month, day);
  std::int64_t ms = days * kMillisPerDay +
                    ((hour * 60LL + minute) * 60 + second) * 1000 + millis;
  ms -= offset_minutes * 60'000;
  out = Timestamp(ms);
  return true;
}

Timestamp parse_iso8601(std::string_view text) {
  Timestamp t;
  if (!try_parse_iso8601(text, t)) {
    throw Error("invalid-timestamp",
                "not an ISO-8601 timestamp: '" + std::string(text) + "'");
  }
  return t;
}

std::string format_iso8601(Timestamp t) {
  constexpr std::int64_t kLowest = days_from_civil(0, 1, 1) * kMillisPerDay;
  constexpr std::int64_t kHighest = days_from_civil(10000, 1, 1) * kMillisPerDay;
  if (!t.is_finite() || t.millis() < kLowest || t.millis() >= kHighest) {
    throw Error("unrepresentable-timestamp",
                "timestamp outside the ISO-8601 year range 0000-9999");
  }
  std::int64_t ms = t.millis();
  std::int64_t days = ms / kMillisPerDay;
  std::int64_t rem = ms % kMillisPerDay;
  if (rem < 0) {
    rem += kMillisPerDay;
    --days;
  }
  const CivilDate date = civil_from_days(days);
  const auto hour = static_cast<int>(rem / 3'600'000);
  const auto minute = static_cast<int>(rem / 60'000 % 60);
  const auto second = static_cast<int>(rem / 1000 % 60);
  const auto millis = static_cast<int>(rem % 1000);

  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(date.year), date.month, date.day, hour, minute,
                second, millis);
  return std::string(buf.data());
}

}  // namespace procscope
