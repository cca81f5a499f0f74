#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bridgescore/bridge.hpp"
#include "bridgescore/community.hpp"
#include "bridgescore/csv.hpp"
#include "bridgescore/ingest.hpp"
#include "bridgescore/metrics.hpp"
#include "bridgescore/perturb.hpp"

// CSV and text emitters for every artifact the command line writes, plus the
// readers needed to consume them again.

namespace bridgescore::reports {

using csv::format_double;

namespace detail {

inline std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

inline std::string opt_count(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

inline std::string join_ids(const ForwardGraph& g, const std::vector<NodeIndex>& nodes) {
    std::string s;
    for (const NodeIndex v : nodes) {
        if (!s.empty()) s.push_back(';');
        s += g.node(v).label;
    }
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    if (s.empty()) return parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

inline double require_double(const std::string& text, const std::string& what) {
    if (const auto d = csv::parse_double(trim(text))) return *d;
    throw Error(ErrorKind::parse, what + ": '" + text + "' is not a number");
}

} // namespace detail

// ---- metrics ---------------------------------------------------------------

inline void write_metrics_csv(std::ostream& out, const ForwardGraph& g, const std::vector<NodeMetrics>& metrics) {
    csv::write_row(out, {"channel", "indegree", "indegree_norm", "eigenvector", "eigenvector_norm", "clustering",
                         "clustering_norm"});
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto& m = metrics.at(v);
        csv::write_row(out, {g.node(v).label, std::to_string(m.indegree), detail::opt_double(m.indegree_norm),
                             format_double(m.eigenvector), detail::opt_double(m.eigenvector_norm),
                             format_double(m.clustering), detail::opt_double(m.clustering_norm)});
    }
}

struct MetricsRow {
    std::string channel;
    NodeMetrics metrics;
};

inline std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) throw Error(ErrorKind::parse, "metrics CSV: missing header");
    const csv::Header h(row);
    const auto c_ch = h.require("channel"), c_in = h.require("indegree"), c_inn = h.require("indegree_norm"),
               c_ev = h.require("eigenvector"), c_evn = h.require("eigenvector_norm"), c_cc = h.require("clustering"),
               c_ccn = h.require("clustering_norm");
    std::vector<MetricsRow> rows;
    while (reader.next(row)) {
        if (row.size() < 7) throw Error(ErrorKind::parse, "metrics CSV: short row " + std::to_string(reader.record_number()));
        const auto opt = [&](std::size_t c) -> std::optional<double> {
            if (trim(row[c]).empty()) return std::nullopt;
            return detail::require_double(row[c], "metrics CSV");
        };
        const auto indeg = csv::parse_int(trim(row[c_in]));
        if (!indeg || *indeg < 0) throw Error(ErrorKind::parse, "metrics CSV: bad indegree '" + row[c_in] + "'");
        rows.push_back(MetricsRow{row[c_ch],
                                  NodeMetrics{static_cast<std::uint64_t>(*indeg),
                                              detail::require_double(row[c_ev], "metrics CSV"),
                                              detail::require_double(row[c_cc], "metrics CSV"), opt(c_inn), opt(c_evn),
                                              opt(c_ccn)}});
    }
    return rows;
}

// ---- ranking ---------------------------------------------------------------

/// Columns in the order of the classic intervention-target table.
inline void write_ranking_csv(std::ostream& out, const ForwardGraph& g, const BridgeRanking& ranking,
                              const std::vector<NodeMetrics>& metrics) {
    csv::write_row(out, {"channel", "clustering_norm", "indegree_norm", "eigenvector_norm", "bridge_score"});
    for (const auto& e : ranking.entries) {
        const auto n = normalized(metrics.at(e.node));
        csv::write_row(out, {g.node(e.node).label, format_double(n.clustering), format_double(n.indegree),
                             format_double(n.eigenvector), format_double(e.score)});
    }
}

// ---- partition -------------------------------------------------------------

inline void write_partition_csv(std::ostream& out, const ForwardGraph& g, const Partition& p) {
    csv::write_row(out, {"channel", "community"});
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        csv::write_row(out, {g.node(v).label, std::to_string(p.assignment.at(v))});
    }
}

/// Reads `channel,community` back into an assignment aligned with `g`.
inline std::vector<CommunityId> read_partition_csv(std::istream& in, const ForwardGraph& g) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) throw Error(ErrorKind::parse, "partition CSV: missing header");
    const csv::Header h(row);
    const auto c_ch = h.require("channel"), c_co = h.require("community");
    constexpr auto unset = static_cast<CommunityId>(-1);
    std::vector<CommunityId> assignment(g.node_count(), unset);
    while (reader.next(row)) {
        const auto v = g.find(row.at(c_ch));
        if (!v) throw Error(ErrorKind::partition_mismatch, "partition names unknown channel '" + row[c_ch] + "'");
        const auto c = csv::parse_int(trim(row.at(c_co)));
        if (!c || *c < 0) throw Error(ErrorKind::parse, "partition CSV: bad community '" + row[c_co] + "'");
        assignment[*v] = static_cast<CommunityId>(*c);
    }
    if (std::find(assignment.begin(), assignment.end(), unset) != assignment.end()) {
        throw Error(ErrorKind::partition_mismatch, "partition CSV does not assign every node");
    }
    return assignment;
}

// ---- grid search -----------------------------------------------------------

inline std::string format_weight(double w) { return format_double(w); }

inline void write_grid_csv(std::ostream& out, const ForwardGraph& g, const GridSearchResult& r) {
    csv::write_row(out, {"w_i", "w_e", "w_c", "delta_density", "top_nodes"});
    for (const auto& e : r.entries) {
        csv::write_row(out, {format_weight(e.weights.indegree), format_weight(e.weights.eigenvector),
                             format_weight(e.weights.clustering), format_double(e.delta_density),
                             detail::join_ids(g, e.top_nodes)});
    }
}

struct GridRow {
    WeightTriple weights;
    double delta_density = 0.0;
    std::vector<std::string> top_nodes;
};

inline std::vector<GridRow> read_grid_csv(std::istream& in) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) throw Error(ErrorKind::parse, "grid CSV: missing header");
    const csv::Header h(row);
    const auto ci = h.require("w_i"), ce = h.require("w_e"), cc = h.require("w_c"), cd = h.require("delta_density"),
               ct = h.require("top_nodes");
    std::vector<GridRow> rows;
    while (reader.next(row)) {
        if (row.size() < 5) throw Error(ErrorKind::parse, "grid CSV: short row " + std::to_string(reader.record_number()));
        rows.push_back(GridRow{WeightTriple{detail::require_double(row[ci], "w_i"), detail::require_double(row[ce], "w_e"),
                                            detail::require_double(row[cc], "w_c")},
                               detail::require_double(row[cd], "delta_density"), detail::split(row[ct], ';')});
    }
    return rows;
}

/// Sorted by count descending, then channel id.
inline void write_frequency_csv(std::ostream& out, const ForwardGraph& g, const FrequencyTable& t) {
    std::vector<NodeIndex> order;
    for (NodeIndex v = 0; v < t.counts.size(); ++v) {
        if (t.counts[v] > 0) order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (t.counts[a] != t.counts[b]) return t.counts[a] > t.counts[b];
        return g.node(a).id < g.node(b).id;
    });
    csv::write_row(out, {"channel", "count"});
    for (const NodeIndex v : order) {
        csv::write_row(out, {g.node(v).label, std::to_string(t.counts[v])});
    }
}

inline void write_best_triple(std::ostream& out, const ForwardGraph& g, const GridSearchResult& r) {
    const auto& best = r.entries.at(r.best);
    out << "best_weights=" << format_weight(best.weights.indegree) << ',' << format_weight(best.weights.eigenvector)
        << ',' << format_weight(best.weights.clustering) << '\n'
        << "delta_density=" << format_double(best.delta_density) << '\n'
        << "density_before=" << format_double(r.density_before) << '\n'
        << "density_after=" << format_double(r.density_before - best.delta_density) << '\n'
        << "k=" << r.k << '\n'
        << "grid=" << r.lo << ".." << r.hi << '\n'
        << "combinations=" << r.entries.size() << '\n'
        << "top_nodes=" << detail::join_ids(g, best.top_nodes) << '\n';
}

// ---- perturbation ----------------------------------------------------------

inline void write_perturbation_csv(std::ostream& out, const PerturbationReport& r) {
    std::string removed;
    for (const auto& id : r.removed) {
        if (!removed.empty()) removed.push_back(';');
        removed += id;
    }
    csv::write_row(out, {"field", "value"});
    const auto row = [&](const char* k, const std::string& v) { csv::write_row(out, {k, v}); };
    row("removed", removed);
    row("missing", std::to_string(r.missing));
    row("nodes_before", std::to_string(r.nodes_before));
    row("nodes_after", std::to_string(r.nodes_after));
    row("edges_before", std::to_string(r.edges_before));
    row("edges_after", std::to_string(r.edges_after));
    row("density_before", format_double(r.density_before));
    row("density_after", format_double(r.density_after));
    row("delta_density", format_double(r.delta_density));
    row("avg_path_before", detail::opt_double(r.avg_path_before));
    row("avg_path_after", detail::opt_double(r.avg_path_after));
    row("communities_before", detail::opt_count(r.communities_before));
    row("communities_after", detail::opt_count(r.communities_after));
    row("resolution", format_double(r.resolution));
    row("seed", std::to_string(r.seed));
}

/// "X% increase in <what>" style line.
inline std::string percent_change_line(const std::string& what, std::optional<double> before,
                                       std::optional<double> after) {
    if (!before || !after) {
        return what + ": undefined after perturbation";
    }
    char buf[160];
    if (*before == *after) {
        std::snprintf(buf, sizeof(buf), "no change in %s (%.7g)", what.c_str(), *before);
    } else if (*before == 0.0) {
        std::snprintf(buf, sizeof(buf), "%s changed from 0 to %.7g", what.c_str(), *after);
    } else {
        const double pct = 100.0 * (*after - *before) / *before;
        std::snprintf(buf, sizeof(buf), "%.2f%% %s in %s (from %.7g to %.7g)", std::abs(pct),
                      pct > 0 ? "increase" : "decrease", what.c_str(), *before, *after);
    }
    return buf;
}

inline void write_perturbation_summary(std::ostream& out, const PerturbationReport& r) {
    const auto as_double = [](const std::optional<std::size_t>& v) -> std::optional<double> {
        if (!v) return std::nullopt;
        return static_cast<double>(*v);
    };
    out << "removed " << r.removed.size() << " node(s)";
    if (r.missing > 0) out << " (" << r.missing << " requested id(s) not found)";
    out << '\n'
        << percent_change_line("average path length", r.avg_path_before, r.avg_path_after) << '\n'
        << percent_change_line("number of communities", as_double(r.communities_before), as_double(r.communities_after))
        << '\n'
        << percent_change_line("network density", r.density_before, r.density_after) << '\n'
        << "delta_density=" << format_double(r.delta_density) << '\n';
}

inline void write_comparative_csv(std::ostream& out, const ForwardGraph& g, const std::vector<ComparativeRow>& rows) {
    csv::write_row(out, {"metric", "removed", "avg_path_before", "avg_path_after", "communities_before",
                         "communities_after", "density_before", "density_after", "delta_density"});
    for (const auto& row : rows) {
        const auto& r = row.report;
        csv::write_row(out, {row.metric, detail::join_ids(g, row.removed), detail::opt_double(r.avg_path_before),
                             detail::opt_double(r.avg_path_after), detail::opt_count(r.communities_before),
                             detail::opt_count(r.communities_after), format_double(r.density_before),
                             format_double(r.density_after), format_double(r.delta_density)});
    }
}

// ---- ingestion and engagement -----------------------------------------------

inline void write_rejects_csv(std::ostream& out, const std::vector<Reject>& rejects) {
    csv::write_row(out, {"file", "row", "reason"});
    for (const auto& r : rejects) {
        csv::write_row(out, {r.file, std::to_string(r.row), r.reason});
    }
}

inline void write_engagement_csv(std::ostream& out, const std::vector<EngagementSummary>& rows) {
    csv::write_row(out, {"channel", "messages", "avg_forwards_per_message", "avg_views_per_message",
                         "replies_per_10_messages", "forward_fraction"});
    for (const auto& r : rows) {
        csv::write_row(out, {r.channel, std::to_string(r.messages), format_double(r.avg_forwards_per_message),
                             format_double(r.avg_views_per_message), format_double(r.replies_per_10_messages),
                             format_double(r.forward_fraction)});
    }
}

inline void write_posting_csv(std::ostream& out, const PostingSeries& s) {
    csv::write_row(out, {"bucket_start", "count"});
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
        const auto start = s.start + s.bucket * static_cast<long>(i);
        csv::write_row(out, {format_timestamp(start), std::to_string(s.counts[i])});
    }
}

} // namespace bridgescore::reports
