#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>

#include "bridgescore/ids.hpp"

namespace bridgescore {

using Timestamp = std::chrono::sys_seconds;

namespace detail {

inline bool read_digits(std::string_view& s, std::size_t count, int& out) {
    if (s.size() < count) {
        return false;
    }
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') {
            return false;
        }
        v = v * 10 + (c - '0');
    }
    out = v;
    s.remove_prefix(count);
    return true;
}

inline bool eat(std::string_view& s, char c) {
    if (!s.empty() && s.front() == c) {
        s.remove_prefix(1);
        return true;
    }
    return false;
}

} // namespace detail

/// ISO-8601 subset: `YYYY-MM-DD[(T| )HH:MM[:SS[.frac]]][Z|(+|-)HH[:]MM]`.
/// Values without an offset are taken as UTC; fractional seconds are truncated.
inline std::optional<Timestamp> parse_iso8601(std::string_view text) {
    using namespace std::chrono;
    auto s = trim(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!detail::read_digits(s, 4, y) || !detail::eat(s, '-') || !detail::read_digits(s, 2, mo) ||
        !detail::eat(s, '-') || !detail::read_digits(s, 2, d)) {
        return std::nullopt;
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    int offset_minutes = 0;
    if (!s.empty()) {
        if (!detail::eat(s, 'T') && !detail::eat(s, ' ')) {
            return std::nullopt;
        }
        if (!detail::read_digits(s, 2, h) || !detail::eat(s, ':') || !detail::read_digits(s, 2, mi)) {
            return std::nullopt;
        }
        if (detail::eat(s, ':')) {
            if (!detail::read_digits(s, 2, sec)) {
                return std::nullopt;
            }
            if (detail::eat(s, '.') || detail::eat(s, ',')) {
                const auto digits = s.find_first_not_of("0123456789");
                if (digits == 0) {
                    return std::nullopt;
                }
                s.remove_prefix(digits == std::string_view::npos ? s.size() : digits);
            }
        }
        if (h > 23 || mi > 59 || sec > 60) {
            return std::nullopt;
        }
        if (!s.empty()) {
            if (detail::eat(s, 'Z') || detail::eat(s, 'z')) {
                // UTC
            } else {
                const bool negative = s.front() == '-';
                if (!detail::eat(s, '+') && !detail::eat(s, '-')) {
                    return std::nullopt;
                }
                int oh = 0, om = 0;
                if (!detail::read_digits(s, 2, oh)) {
                    return std::nullopt;
                }
                detail::eat(s, ':');
                if (!s.empty() && !detail::read_digits(s, 2, om)) {
                    return std::nullopt;
                }
                if (oh > 23 || om > 59) {
                    return std::nullopt;
                }
                offset_minutes = (negative ? -1 : 1) * (oh * 60 + om);
            }
            if (!s.empty()) {
                return std::nullopt;
            }
        }
    }
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} - minutes{offset_minutes};
}

/// Parses with a strptime(3) format; the result is read as UTC.
inline std::optional<Timestamp> parse_with_format(std::string_view text, const std::string& format) {
    std::tm tm{};
    const std::string buf(trim(text));
    const char* end = ::strptime(buf.c_str(), format.c_str(), &tm);
    if (end == nullptr || *end != '\0') {
        return std::nullopt;
    }
    return Timestamp{std::chrono::seconds{::timegm(&tm)}};
}

inline std::optional<Timestamp> parse_timestamp(std::string_view text, const std::optional<std::string>& format = {}) {
    return format ? parse_with_format(text, *format) : parse_iso8601(text);
}

/// `YYYY-MM-DDTHH:MM:SSZ`.
inline std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day ymd{day_start};
    const hh_mm_ss hms{ts - day_start};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

} // namespace bridgescore
