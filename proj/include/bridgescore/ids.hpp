#pragma once

#include <string>
#include <string_view>

#include "bridgescore/error.hpp"

namespace bridgescore {

inline std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

/// Display form of a channel handle: surrounding whitespace and leading "@" removed, case kept.
inline std::string display_label(std::string_view raw) {
    auto s = trim(raw);
    while (!s.empty() && s.front() == '@') {
        s = trim(s.substr(1));
    }
    return std::string(s);
}

/// Canonical channel id used for every comparison. Case folding is ASCII only;
/// multi-byte UTF-8 sequences pass through untouched.
inline std::string normalize_id(std::string_view raw) {
    std::string id = display_label(raw);
    for (char& c : id) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return id;
}

/// normalize_id, rejecting handles that are empty after normalization.
inline std::string require_id(std::string_view raw) {
    std::string id = normalize_id(raw);
    if (id.empty()) {
        throw Error(ErrorKind::malformed_identifier,
                    "channel id '" + std::string(raw) + "' is empty after normalization");
    }
    return id;
}

} // namespace bridgescore
