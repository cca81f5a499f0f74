#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bridgescore/csv.hpp"
#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"
#include "bridgescore/ids.hpp"
#include "bridgescore/timestamp.hpp"

namespace bridgescore {

/// One row of the scraped message export. Channel handles keep their display
/// form (trimmed, "@" removed); compare them through normalize_id.
struct MessageRecord {
    std::string channel_name;
    std::int64_t message_id = 0;
    Timestamp timestamp{};
    std::optional<std::string> forward_from; // origin channel when the message is a forward
    std::uint64_t views = 0;
    std::uint64_t forwards = 0;
    std::uint64_t replies = 0;
};

/// One row of the collected-chats export: a channel discovered through a seed.
struct ChatRecord {
    std::string username;
    std::string source;
    std::optional<Timestamp> collected_at;
};

struct EdgeEvent {
    std::string source;
    std::string target;
    std::optional<Timestamp> timestamp;
};

struct Reject {
    std::string file;
    std::size_t row = 0; // CSV record number, header is row 1
    std::string reason;
};

template <typename Record>
struct ParseResult {
    std::vector<Record> records;
    std::vector<Reject> rejects;
};

struct MessageColumns {
    std::string channel = "channel_name";
    std::string message_id = "msg_id";
    std::string date = "date";
    std::string forward_from = "forward_msg_from_peer_name";
    std::string views = "views";
    std::string forwards = "number_forwards";
    std::string replies = "number_replies";
};

struct ChatColumns {
    std::string username = "username";
    std::string source = "source";
    std::string collected_at = "collected_at";
};

namespace detail {

/// Non-negative count; blank means 0 and integral floats ("12.0") are accepted.
inline std::optional<std::uint64_t> parse_count(std::string_view text) {
    const auto t = trim(text);
    if (t.empty()) {
        return 0;
    }
    if (const auto i = csv::parse_int(t)) {
        if (*i < 0) {
            return std::nullopt;
        }
        return static_cast<std::uint64_t>(*i);
    }
    if (const auto d = csv::parse_double(t); d && *d >= 0.0 && std::floor(*d) == *d && *d < 1.8e19) {
        return static_cast<std::uint64_t>(*d);
    }
    return std::nullopt;
}

inline const std::string& field(const std::vector<std::string>& row, std::size_t col) {
    static const std::string empty;
    return col < row.size() ? row[col] : empty;
}

} // namespace detail

/// Reads the message export. The channel, date and forward-origin columns are
/// required; id and engagement columns are optional. Bad rows are quarantined.
inline ParseResult<MessageRecord> read_messages(std::istream& in, const MessageColumns& cols = {},
                                                const std::optional<std::string>& time_format = {},
                                                const std::string& file_label = "messages") {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) {
        throw Error(ErrorKind::parse, file_label + ": missing header row");
    }
    const csv::Header header(row);
    const auto c_channel = header.require(cols.channel);
    const auto c_date = header.require(cols.date);
    const auto c_forward = header.require(cols.forward_from);
    const auto c_id = header.find(cols.message_id);
    const auto c_views = header.find(cols.views);
    const auto c_forwards = header.find(cols.forwards);
    const auto c_replies = header.find(cols.replies);

    ParseResult<MessageRecord> result;
    std::int64_t ordinal = 0;
    while (reader.next(row)) {
        ++ordinal;
        if (row.size() == 1 && trim(row[0]).empty()) {
            continue;
        }
        const auto reject = [&](std::string reason) {
            result.rejects.push_back(Reject{file_label, reader.record_number(), std::move(reason)});
        };
        MessageRecord rec;
        rec.channel_name = display_label(detail::field(row, c_channel));
        if (rec.channel_name.empty()) {
            reject("empty " + cols.channel);
            continue;
        }
        const auto ts = parse_timestamp(detail::field(row, c_date), time_format);
        if (!ts) {
            reject("unparseable " + cols.date + " '" + detail::field(row, c_date) + "'");
            continue;
        }
        rec.timestamp = *ts;
        const auto& fwd = detail::field(row, c_forward);
        if (!trim(fwd).empty()) {
            auto id = display_label(fwd);
            if (id.empty()) {
                reject("malformed " + cols.forward_from + " '" + fwd + "'");
                continue;
            }
            rec.forward_from = std::move(id);
        }
        rec.message_id = ordinal;
        if (c_id) {
            const auto& text = detail::field(row, *c_id);
            if (!trim(text).empty()) {
                const auto id = csv::parse_int(trim(text));
                if (!id) {
                    reject("non-integer " + cols.message_id + " '" + text + "'");
                    continue;
                }
                rec.message_id = *id;
            }
        }
        bool ok = true;
        const auto count = [&](const std::optional<std::size_t>& col, const std::string& name, std::uint64_t& out) {
            if (!ok || !col) {
                return;
            }
            const auto& text = detail::field(row, *col);
            if (const auto v = detail::parse_count(text)) {
                out = *v;
            } else {
                reject("invalid " + name + " '" + text + "'");
                ok = false;
            }
        };
        count(c_views, cols.views, rec.views);
        count(c_forwards, cols.forwards, rec.forwards);
        count(c_replies, cols.replies, rec.replies);
        if (ok) {
            result.records.push_back(std::move(rec));
        }
    }
    return result;
}

/// Reads the collected-chats export. `username` and `source` are required; the
/// collection time column is optional.
inline ParseResult<ChatRecord> read_chats(std::istream& in, const ChatColumns& cols = {},
                                          const std::optional<std::string>& time_format = {},
                                          const std::string& file_label = "chats") {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) {
        throw Error(ErrorKind::parse, file_label + ": missing header row");
    }
    const csv::Header header(row);
    const auto c_user = header.require(cols.username);
    const auto c_source = header.require(cols.source);
    const auto c_time = header.find(cols.collected_at);

    ParseResult<ChatRecord> result;
    while (reader.next(row)) {
        if (row.size() == 1 && trim(row[0]).empty()) {
            continue;
        }
        const auto reject = [&](std::string reason) {
            result.rejects.push_back(Reject{file_label, reader.record_number(), std::move(reason)});
        };
        ChatRecord rec;
        rec.username = display_label(detail::field(row, c_user));
        rec.source = display_label(detail::field(row, c_source));
        if (rec.username.empty()) {
            reject("empty " + cols.username);
            continue;
        }
        if (rec.source.empty()) {
            reject("empty " + cols.source);
            continue;
        }
        if (c_time) {
            const auto& text = detail::field(row, *c_time);
            if (!trim(text).empty()) {
                rec.collected_at = parse_timestamp(text, time_format);
                if (!rec.collected_at) {
                    reject("unparseable " + cols.collected_at + " '" + text + "'");
                    continue;
                }
            }
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

/// Forwards received by seed channels: origin -> channel that re-posted.
inline std::vector<EdgeEvent> ingest_incoming(std::span<const MessageRecord> rows) {
    std::vector<EdgeEvent> events;
    for (const auto& r : rows) {
        if (r.forward_from) {
            events.push_back(EdgeEvent{*r.forward_from, r.channel_name, r.timestamp});
        }
    }
    return events;
}

/// Forwards leaving seed channels: seed source -> discovered channel.
inline std::vector<EdgeEvent> ingest_outgoing(std::span<const ChatRecord> rows) {
    std::vector<EdgeEvent> events;
    events.reserve(rows.size());
    for (const auto& r : rows) {
        events.push_back(EdgeEvent{r.source, r.username, r.collected_at});
    }
    return events;
}

struct FilterResult {
    std::vector<EdgeEvent> events;
    std::size_t untimestamped = 0; // kept because they carry no time
    std::size_t removed = 0;       // older than the cutoff
};

/// Keeps events at or after `cutoff`; events without a timestamp are kept and counted.
inline FilterResult temporal_filter(std::span<const EdgeEvent> events, Timestamp cutoff) {
    FilterResult r;
    for (const auto& e : events) {
        if (!e.timestamp) {
            ++r.untimestamped;
            r.events.push_back(e);
        } else if (*e.timestamp >= cutoff) {
            r.events.push_back(e);
        } else {
            ++r.removed;
        }
    }
    return r;
}

/// Collapses events into a graph; `seeds` flags the crawled seed channels.
inline ForwardGraph build_graph(std::span<const EdgeEvent> events, std::span<const std::string> seeds = {}) {
    ForwardGraph g;
    for (const auto& s : seeds) {
        g.add_node(s, true);
    }
    for (const auto& e : events) {
        g.add_edge(e.source, e.target);
    }
    return g;
}

struct EngagementSummary {
    std::string channel;
    std::size_t messages = 0;
    double avg_forwards_per_message = 0.0;
    double avg_views_per_message = 0.0;
    double replies_per_10_messages = 0.0;
    double forward_fraction = 0.0;
};

/// Per-channel engagement means, sorted by channel id. `channels` holds ids in
/// any spelling; empty means every channel. Channels without messages are
/// omitted. The reported name is the first spelling seen.
inline std::vector<EngagementSummary> engagement_summary(std::span<const MessageRecord> rows,
                                                         const std::set<std::string>& channels = {}) {
    struct Totals {
        std::string label;
        std::size_t messages = 0;
        std::uint64_t forwards = 0, views = 0, replies = 0;
        std::size_t forwarded = 0;
    };
    std::set<std::string> wanted;
    for (const auto& c : channels) {
        wanted.insert(normalize_id(c));
    }
    std::map<std::string, Totals> acc;
    for (const auto& r : rows) {
        const auto id = normalize_id(r.channel_name);
        if (!wanted.empty() && !wanted.contains(id)) {
            continue;
        }
        auto& t = acc[id];
        if (t.messages == 0) {
            t.label = r.channel_name;
        }
        ++t.messages;
        t.forwards += r.forwards;
        t.views += r.views;
        t.replies += r.replies;
        t.forwarded += r.forward_from ? 1 : 0;
    }
    std::vector<EngagementSummary> out;
    for (const auto& [id, t] : acc) {
        const double n = static_cast<double>(t.messages);
        out.push_back(EngagementSummary{t.label, t.messages, static_cast<double>(t.forwards) / n,
                                        static_cast<double>(t.views) / n, 10.0 * static_cast<double>(t.replies) / n,
                                        static_cast<double>(t.forwarded) / n});
    }
    return out;
}

struct PostingSeries {
    Timestamp start{};          // start of the first bucket
    std::chrono::seconds bucket{0};
    std::vector<std::uint64_t> counts;
};

/// Message counts per bucket from the bucket holding the earliest message to the
/// one holding the latest, zero-filled. Buckets are aligned to multiples of the
/// bucket length since the Unix epoch, so daily buckets are UTC calendar days.
inline PostingSeries posting_frequency(std::span<const MessageRecord> rows, std::chrono::seconds bucket) {
    if (bucket.count() <= 0) {
        throw Error(ErrorKind::invalid_argument, "bucket length must be positive");
    }
    PostingSeries series;
    series.bucket = bucket;
    if (rows.empty()) {
        return series;
    }
    const auto slot = [&](Timestamp t) {
        const auto s = t.time_since_epoch().count();
        const auto b = bucket.count();
        return s >= 0 ? s / b : -((-s + b - 1) / b);
    };
    const auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const auto first = slot(lo->timestamp);
    const auto last = slot(hi->timestamp);
    series.start = Timestamp{bucket * first};
    series.counts.assign(static_cast<std::size_t>(last - first + 1), 0);
    for (const auto& r : rows) {
        ++series.counts[static_cast<std::size_t>(slot(r.timestamp) - first)];
    }
    return series;
}

} // namespace bridgescore
