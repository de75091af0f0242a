#ifndef DEFICIT_DURATION_HPP
#define DEFICIT_DURATION_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace deficit {

/// Time in tenths of a second. All race times are kept as exact integers.
using Deciseconds = std::int64_t;

/// Parses `M:SS.d`, `MM:SS.d` or `H:MM:SS.d` into deciseconds.
///
/// The fraction is optional. A second fractional digit is accepted only when
/// it is `0`, so race-sheet values such as `04:03.80` read exactly.
/// Throws ParseError naming the offending field.
Deciseconds parse_duration(std::string_view text);

/// Canonical form: `MM:SS.d` below one hour, `H:MM:SS.d` from one hour on.
std::string format_duration(Deciseconds ds);

/// Race-sheet form with two-digit fields and a trailing zero digit:
/// `04:03.80`, `03:01:09.40`.
std::string format_duration_sheet(Deciseconds ds);

/// Seconds with one decimal (`1.8`, `0.0`). With `integer_when_whole` a whole
/// number of seconds drops the decimal (`70`).
std::string format_seconds(Deciseconds ds, bool integer_when_whole = false);

} // namespace deficit

#endif // DEFICIT_DURATION_HPP
