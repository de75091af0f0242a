#ifndef DEFICIT_SRC_CSV_HPP
#define DEFICIT_SRC_CSV_HPP

// Minimal reader for the unquoted, comma-separated files this project uses.

#include "deficit/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deficit::csv {

struct Row {
    std::size_t number;  // 1-based data row
    std::vector<std::string_view> fields;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

/// Splits `bytes` into data rows after checking the header matches exactly.
/// Blank lines are skipped; a UTF-8 byte-order mark is tolerated.
inline std::vector<Row> read(std::string_view bytes, std::string_view expected_header) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);

    std::vector<Row> rows;
    bool header_seen = false;
    std::size_t data_row = 0;
    const auto expected = split_fields(expected_header);

    while (!bytes.empty()) {
        auto nl = bytes.find('\n');
        auto line = trim(bytes.substr(0, nl));
        bytes = nl == std::string_view::npos ? std::string_view{} : bytes.substr(nl + 1);
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (!header_seen) {
            if (fields != expected)
                throw ParseError(0, "header",
                                 "expected '" + std::string(expected_header) + "', got '" +
                                     std::string(line) + "'");
            header_seen = true;
            continue;
        }
        ++data_row;
        if (fields.size() != expected.size())
            throw ParseError(data_row, "row",
                             "expected " + std::to_string(expected.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        rows.push_back({data_row, std::move(fields)});
    }
    if (!header_seen) throw ParseError(0, "header", "missing");
    return rows;
}

inline double to_double(std::string_view text, std::size_t row, std::string_view field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ParseError(row, std::string(field), "not a finite number: '" + std::string(text) + "'");
    return v;
}

inline std::int64_t to_int(std::string_view text, std::size_t row, std::string_view field) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(row, std::string(field), "not an integer: '" + std::string(text) + "'");
    return v;
}

} // namespace deficit::csv

#endif // DEFICIT_SRC_CSV_HPP
