#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace procscope {

/// Instant in UTC with millisecond resolution, counted from the Unix epoch.
/// Two sentinels bracket every finite value: `Timestamp::min()` stands for
/// "before everything" (static object attributes) and `Timestamp::max()` for
/// "never".
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t millis) : millis_(millis) {}

  static constexpr Timestamp min() {
    return Timestamp(std::numeric_limits<std::int64_t>::min());
  }
  static constexpr Timestamp max() {
    return Timestamp(std::numeric_limits<std::int64_t>::max());
  }

  constexpr std::int64_t millis() const { return millis_; }
  constexpr bool is_finite() const { return *this != min() && *this != max(); }

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

 private:
  std::int64_t millis_ = 0;
};

/// Parses ISO-8601 date-times: `YYYY-MM-DD`, optionally followed by `T` (or a
/// space) and `hh:mm[:ss[.fraction]]`, optionally followed by `Z` or an
/// offset `+hh:mm` / `+hhmm` / `+hh`. Values without an offset are taken as
/// UTC. Fractions finer than a millisecond are truncated. Throws
/// `Error{"invalid-timestamp"}` on anything else.
Timestamp parse_iso8601(std::string_view text);

/// Non-throwing variant; returns false on malformed input.
bool try_parse_iso8601(std::string_view text, Timestamp& out);

/// Formats as `YYYY-MM-DDThh:mm:ss.mmmZ`. Sentinels and instants outside
/// years 0000-9999 throw `Error{"unrepresentable-timestamp"}`.
std::string format_iso8601(Timestamp t);

}  // namespace procscope
