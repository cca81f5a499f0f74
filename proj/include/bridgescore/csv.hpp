#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "bridgescore/error.hpp"

namespace bridgescore::csv {

/// RFC 4180 reader: quoted fields may hold separators, doubled quotes and newlines.
class Reader {
public:
    explicit Reader(std::istream& in, char separator = ',') : in_(in), sep_(separator) {}

    /// Reads the next record. Returns false at end of input.
    bool next(std::vector<std::string>& fields) {
        fields.clear();
        int c = in_.get();
        if (c == std::char_traits<char>::eof()) {
            return false;
        }
        ++record_;
        if (record_ == 1 && c == 0xEF) {
            // UTF-8 byte order mark.
            if (in_.get() == 0xBB && in_.get() == 0xBF) {
                c = in_.get();
            } else {
                throw Error(ErrorKind::parse, "invalid byte order mark");
            }
        }
        std::string field;
        bool quoted = false;
        bool after_quote = false;
        for (;; c = in_.get()) {
            if (c == std::char_traits<char>::eof()) {
                if (quoted) {
                    throw Error(ErrorKind::parse, "unterminated quoted field in record " + std::to_string(record_));
                }
                fields.push_back(std::move(field));
                return true;
            }
            const char ch = static_cast<char>(c);
            if (quoted) {
                if (ch == '"') {
                    if (in_.peek() == '"') {
                        in_.get();
                        field.push_back('"');
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    field.push_back(ch);
                }
                continue;
            }
            if (ch == sep_) {
                fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r' && in_.peek() == '\n') {
                    in_.get();
                }
                fields.push_back(std::move(field));
                return true;
            } else if (ch == '"' && field.empty() && !after_quote) {
                quoted = true;
            } else {
                field.push_back(ch);
            }
        }
    }

    /// 1-based index of the record last returned (header is record 1).
    std::size_t record_number() const noexcept { return record_; }

private:
    std::istream& in_;
    char sep_;
    std::size_t record_ = 0;
};

inline std::string quote(std::string_view field, char separator = ',') {
    if (field.find_first_of(std::string{separator} + "\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields, char separator = ',') {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << separator;
        }
        out << quote(fields[i], separator);
    }
    out << '\n';
}

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
    double value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        return std::nullopt;
    }
    return value;
}

inline std::optional<std::int64_t> parse_int(std::string_view text) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        return std::nullopt;
    }
    return value;
}

/// Column lookup by header name.
class Header {
public:
    Header() = default;
    explicit Header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::string name = names[i];
            while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) {
                name.pop_back();
            }
            while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) {
                name.erase(name.begin());
            }
            columns_.try_emplace(std::move(name), i);
        }
    }

    std::optional<std::size_t> find(const std::string& name) const {
        if (auto it = columns_.find(name); it != columns_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    std::size_t require(const std::string& name) const {
        if (auto col = find(name)) {
            return *col;
        }
        throw Error(ErrorKind::parse, "missing required column '" + name + "'");
    }

private:
    std::unordered_map<std::string, std::size_t> columns_;
};

} // namespace bridgescore::csv
