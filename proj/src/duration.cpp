#include "deficit/duration.hpp"

#include "deficit/error.hpp"

#include <cstdio>
#include <vector>

namespace deficit {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

std::int64_t digits_value(std::string_view s) {
    std::int64_t v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

std::vector<std::string_view> split_colons(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        auto pos = text.find(':', start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

Deciseconds parse_duration(std::string_view text) {
    const std::string quoted = "'" + std::string(text) + "'";
    auto parts = split_colons(text);
    if (parts.size() != 2 && parts.size() != 3)
        throw ParseError(0, "duration", "expected [H:]MM:SS.d, got " + quoted);

    std::int64_t hours = 0;
    std::string_view minutes_text;
    if (parts.size() == 3) {
        if (!all_digits(parts[0]) || parts[0].size() > 6)
            throw ParseError(0, "hours", "not a number in " + quoted);
        hours = digits_value(parts[0]);
        minutes_text = parts[1];
        if (minutes_text.size() != 2)
            throw ParseError(0, "minutes", "expected two digits in " + quoted);
    } else {
        minutes_text = parts[0];
        if (minutes_text.size() > 2)
            throw ParseError(0, "minutes", "expected one or two digits in " + quoted);
    }
    if (!all_digits(minutes_text))
        throw ParseError(0, "minutes", "not a number in " + quoted);
    const auto minutes = digits_value(minutes_text);
    if (minutes >= 60) throw ParseError(0, "minutes", "must be below 60 in " + quoted);

    std::string_view sec_text = parts.back();
    std::string_view frac_text;
    if (auto dot = sec_text.find('.'); dot != std::string_view::npos) {
        frac_text = sec_text.substr(dot + 1);
        sec_text = sec_text.substr(0, dot);
        if (frac_text.empty() || frac_text.size() > 2 || !all_digits(frac_text))
            throw ParseError(0, "fraction", "expected one decimal digit in " + quoted);
        if (frac_text.size() == 2 && frac_text[1] != '0')
            throw ParseError(0, "fraction", "resolution is 0.1 s in " + quoted);
    }
    if (sec_text.size() != 2 || !all_digits(sec_text))
        throw ParseError(0, "seconds", "expected two digits in " + quoted);
    const auto seconds = digits_value(sec_text);
    if (seconds >= 60) throw ParseError(0, "seconds", "must be below 60 in " + quoted);

    const std::int64_t tenths = frac_text.empty() ? 0 : frac_text[0] - '0';
    return ((hours * 60 + minutes) * 60 + seconds) * 10 + tenths;
}

std::string format_duration(Deciseconds ds) {
    if (ds < 0) throw ValidationError("cannot format a negative duration");
    const auto tenths = ds % 10;
    const auto total_s = ds / 10;
    const auto s = total_s % 60;
    const auto m = (total_s / 60) % 60;
    const auto h = total_s / 3600;
    char buf[48];
    if (h == 0)
        std::snprintf(buf, sizeof buf, "%02lld:%02lld.%lld", static_cast<long long>(m),
                      static_cast<long long>(s), static_cast<long long>(tenths));
    else
        std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld.%lld", static_cast<long long>(h),
                      static_cast<long long>(m), static_cast<long long>(s),
                      static_cast<long long>(tenths));
    return buf;
}

std::string format_duration_sheet(Deciseconds ds) {
    if (ds < 0) throw ValidationError("cannot format a negative duration");
    const auto tenths = ds % 10;
    const auto total_s = ds / 10;
    const auto s = total_s % 60;
    const auto m = (total_s / 60) % 60;
    const auto h = total_s / 3600;
    char buf[48];
    if (h == 0)
        std::snprintf(buf, sizeof buf, "%02lld:%02lld.%lld0", static_cast<long long>(m),
                      static_cast<long long>(s), static_cast<long long>(tenths));
    else
        std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld.%lld0", static_cast<long long>(h),
                      static_cast<long long>(m), static_cast<long long>(s),
                      static_cast<long long>(tenths));
    return buf;
}

std::string format_seconds(Deciseconds ds, bool integer_when_whole) {
    const bool negative = ds < 0;
    const auto mag = negative ? -ds : ds;
    std::string out = negative ? "-" : "";
    out += std::to_string(mag / 10);
    if (!(integer_when_whole && mag % 10 == 0)) out += "." + std::to_string(mag % 10);
    return out;
}

} // namespace deficit
