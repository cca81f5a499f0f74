#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bridgescore/bridgescore.hpp"

namespace bridgescore::cli {

namespace fs = std::filesystem;

struct RunConfig {
    std::string messages;
    std::string chats;
    std::string graph;
    std::string cutoff = "2022-01-01T00:00:00Z";
    std::string time_format;
    double resolution = 2.2;
    int k = 12;
    std::string weights = "10,7,7";
    std::string grid = "1..10";
    std::uint64_t seed = 0;
    std::string out = ".";
    double eig_tol = 1e-8;
    int eig_max_iter = 1000;
    bool directed_density = false;
    bool no_damping = false;
    unsigned threads = 0;
    MessageColumns message_columns;
    ChatColumns chat_columns;

    // perturb
    std::vector<std::string> remove;
    bool remove_given = false;
    // stats
    std::string bucket = "1d";
    std::vector<std::string> channels;
    // export
    std::string format = "both";
};

/// Error surfaced to the user with a nonzero exit status.
struct CommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline WeightTriple parse_weights(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto d = csv::parse_double(trim(item));
        if (!d || !(*d > 0.0)) {
            throw CommandError("--weights expects three positive numbers w_i,w_e,w_c, got '" + text + "'");
        }
        parts.push_back(*d);
    }
    if (parts.size() != 3) {
        throw CommandError("--weights expects three positive numbers w_i,w_e,w_c, got '" + text + "'");
    }
    return WeightTriple{parts[0], parts[1], parts[2]};
}

inline std::pair<int, int> parse_grid(const std::string& text) {
    const auto dots = text.find("..");
    const auto lo = dots == std::string::npos ? std::nullopt : csv::parse_int(trim(std::string_view(text).substr(0, dots)));
    const auto hi = dots == std::string::npos ? std::nullopt : csv::parse_int(trim(std::string_view(text).substr(dots + 2)));
    if (!lo || !hi || *lo < 1 || *lo > *hi || *hi > 1000) {
        throw CommandError("--grid expects lo..hi with 1 <= lo <= hi, got '" + text + "'");
    }
    return {static_cast<int>(*lo), static_cast<int>(*hi)};
}

inline std::chrono::seconds parse_bucket(const std::string& text) {
    const auto t = trim(text);
    if (t.empty()) {
        throw CommandError("--bucket must not be empty");
    }
    long long unit = 1;
    auto digits = t;
    switch (t.back()) {
    case 's': unit = 1; digits.remove_suffix(1); break;
    case 'm': unit = 60; digits.remove_suffix(1); break;
    case 'h': unit = 3600; digits.remove_suffix(1); break;
    case 'd': unit = 86400; digits.remove_suffix(1); break;
    case 'w': unit = 7 * 86400; digits.remove_suffix(1); break;
    default: break;
    }
    const auto n = csv::parse_int(digits);
    if (!n || *n <= 0) {
        throw CommandError("--bucket expects a positive duration such as 1d, 12h or 3600, got '" + text + "'");
    }
    return std::chrono::seconds{*n * unit};
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CommandError("cannot read '" + path + "'");
    }
    return in;
}

inline std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CommandError("cannot write '" + path.string() + "'");
    }
    return out;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
    auto out = open_output(path);
    fn(out);
    out.flush();
    if (!out) {
        throw CommandError("failed writing '" + path.string() + "'");
    }
}

inline EigenvectorOptions eigen_options(const RunConfig& c) {
    return EigenvectorOptions{c.eig_tol, c.eig_max_iter, c.no_damping ? 0.0 : 0.15};
}

inline DensityFormula density_formula(const RunConfig& c) {
    return c.directed_density ? DensityFormula::directed : DensityFormula::undirected;
}

inline std::optional<std::string> time_format(const RunConfig& c) {
    if (c.time_format.empty()) return std::nullopt;
    return c.time_format;
}

struct IngestOutcome {
    ForwardGraph graph;
    std::vector<MessageRecord> messages;
    std::vector<Reject> rejects;
    std::size_t events = 0;
    std::size_t filtered_out = 0;
    std::size_t untimestamped = 0;
};

inline IngestOutcome ingest_csvs(const RunConfig& c) {
    const auto cutoff = parse_timestamp(c.cutoff);
    if (!cutoff) {
        throw CommandError("--cutoff '" + c.cutoff + "' is not an ISO-8601 timestamp");
    }
    IngestOutcome o;
    std::vector<EdgeEvent> events;
    std::vector<std::string> seeds;
    if (!c.messages.empty()) {
        auto in = open_input(c.messages);
        auto parsed = read_messages(in, c.message_columns, time_format(c), c.messages);
        for (const auto& m : parsed.records) seeds.push_back(m.channel_name);
        const auto incoming = ingest_incoming(parsed.records);
        events.insert(events.end(), incoming.begin(), incoming.end());
        o.rejects.insert(o.rejects.end(), parsed.rejects.begin(), parsed.rejects.end());
        o.messages = std::move(parsed.records);
    }
    if (!c.chats.empty()) {
        auto in = open_input(c.chats);
        auto parsed = read_chats(in, c.chat_columns, time_format(c), c.chats);
        for (const auto& r : parsed.records) seeds.push_back(r.source);
        const auto outgoing = ingest_outgoing(parsed.records);
        events.insert(events.end(), outgoing.begin(), outgoing.end());
        o.rejects.insert(o.rejects.end(), parsed.rejects.begin(), parsed.rejects.end());
    }
    o.events = events.size();
    auto filtered = temporal_filter(events, *cutoff);
    o.filtered_out = filtered.removed;
    o.untimestamped = filtered.untimestamped;
    // Seeds only flag nodes that take part in a retained forward.
    o.graph = build_graph(filtered.events);
    for (const auto& s : seeds) {
        if (const auto v = o.graph.find(s)) {
            o.graph.set_seed(*v);
        }
    }
    return o;
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    std::string tail = s.substr(s.size() - suffix.size());
    for (auto& ch : tail) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return tail == suffix;
}

inline ForwardGraph load_graph(const RunConfig& c) {
    const bool from_csv = !c.messages.empty() || !c.chats.empty();
    if (from_csv == !c.graph.empty()) {
        throw CommandError("supply exactly one graph source: --graph, or --messages/--chats");
    }
    if (from_csv) {
        return ingest_csvs(c).graph;
    }
    auto in = open_input(c.graph);
    if (has_suffix(c.graph, ".gexf") || has_suffix(c.graph, ".xml")) {
        return import_gexf(in).graph;
    }
    return read_edge_list(in);
}

inline fs::path output_dir(const RunConfig& c) {
    const fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) {
        throw CommandError("output directory '" + c.out + "' is not usable");
    }
    return dir;
}

} // namespace detail

inline int cmd_ingest(const RunConfig& c, std::ostream& out) {
    if (c.messages.empty() && c.chats.empty()) {
        throw CommandError("ingest needs --messages and/or --chats");
    }
    const auto o = detail::ingest_csvs(c);
    const auto dir = detail::output_dir(c);
    detail::write_file(dir / "edges.tsv", [&](std::ostream& f) { write_edge_list(f, o.graph); });
    detail::write_file(dir / "graph.gexf", [&](std::ostream& f) { export_gexf(f, o.graph); });
    detail::write_file(dir / "rejects.csv", [&](std::ostream& f) { reports::write_rejects_csv(f, o.rejects); });
    out << "nodes=" << o.graph.node_count() << '\n'
        << "edges=" << o.graph.edge_count() << '\n'
        << "forward_events=" << o.events << '\n'
        << "before_cutoff=" << o.filtered_out << '\n'
        << "untimestamped=" << o.untimestamped << '\n'
        << "dropped_self_loops=" << o.graph.dropped_self_loops() << '\n'
        << "rejected_rows=" << o.rejects.size() << '\n';
    return 0;
}

inline int cmd_analyze(const RunConfig& c, std::ostream& out) {
    const auto g = detail::load_graph(c);
    if (g.node_count() == 0) {
        throw CommandError("graph is empty");
    }
    const auto weights = detail::parse_weights(c.weights);
    const auto metrics = compute_metrics(g, detail::eigen_options(c));
    const auto ranking = rank(g, metrics, weights);
    const auto dir = detail::output_dir(c);

    GexfAnnotations ann;
    ann.metrics = metrics;
    ann.bridge_scores = bridge_scores(metrics, weights);
    std::optional<Partition> partition;
    if (g.edge_count() > 0) {
        partition = louvain(g, c.resolution, c.seed);
        ann.communities = partition->assignment;
    }
    detail::write_file(dir / "metrics.csv", [&](std::ostream& f) { reports::write_metrics_csv(f, g, metrics); });
    detail::write_file(dir / "ranking.csv", [&](std::ostream& f) { reports::write_ranking_csv(f, g, ranking, metrics); });
    if (partition) {
        detail::write_file(dir / "partition.csv", [&](std::ostream& f) { reports::write_partition_csv(f, g, *partition); });
    }
    detail::write_file(dir / "graph.gexf", [&](std::ostream& f) { export_gexf(f, g, ann); });

    out << "nodes=" << g.node_count() << '\n' << "edges=" << g.edge_count() << '\n';
    if (g.node_count() >= 2) {
        out << "density=" << csv::format_double(density(g, detail::density_formula(c))) << '\n';
    }
    if (const auto apl = reachable_distances(g); apl.pairs > 0) {
        out << "average_path_length="
            << csv::format_double(static_cast<double>(apl.total_hops) / static_cast<double>(apl.pairs)) << '\n';
    }
    if (partition) {
        out << "communities=" << partition->community_count << '\n'
            << "modularity=" << csv::format_double(partition->modularity) << '\n';
    }
    const std::size_t shown = std::min<std::size_t>(ranking.entries.size(), c.k > 0 ? c.k : 0);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& e = ranking.entries[i];
        out << "rank " << i + 1 << ": " << g.node(e.node).label << ' ' << csv::format_double(e.score) << '\n';
    }
    return 0;
}

inline int cmd_optimize(const RunConfig& c, std::ostream& out) {
    const auto g = detail::load_graph(c);
    const auto [lo, hi] = detail::parse_grid(c.grid);
    if (c.k < 1 || static_cast<std::size_t>(c.k) >= g.node_count()) {
        throw CommandError("--k must satisfy 1 <= k < number of nodes (" + std::to_string(g.node_count()) + ")");
    }
    const auto metrics = compute_metrics(g, detail::eigen_options(c));
    GridOptions opts;
    opts.k = static_cast<std::size_t>(c.k);
    opts.lo = lo;
    opts.hi = hi;
    opts.density = detail::density_formula(c);
    opts.threads = c.threads;
    const auto result = grid_search(g, metrics, opts);
    const auto freq = frequency_analysis(result, g.node_count());
    const auto dir = detail::output_dir(c);
    detail::write_file(dir / "grid.csv", [&](std::ostream& f) { reports::write_grid_csv(f, g, result); });
    detail::write_file(dir / "frequency.csv", [&](std::ostream& f) { reports::write_frequency_csv(f, g, freq); });
    detail::write_file(dir / "best.txt", [&](std::ostream& f) { reports::write_best_triple(f, g, result); });
    reports::write_best_triple(out, g, result);
    return 0;
}

inline int cmd_perturb(const RunConfig& c, std::ostream& out) {
    const auto g = detail::load_graph(c);
    PerturbationOptions opts{c.resolution, c.seed, detail::density_formula(c)};
    std::vector<std::string> targets;
    std::optional<std::vector<NodeMetrics>> metrics;
    if (c.remove_given) {
        for (const auto& id : c.remove) {
            if (!trim(id).empty()) targets.push_back(id);
        }
    } else {
        if (c.k < 0 || static_cast<std::size_t>(c.k) >= g.node_count()) {
            throw CommandError("--k must satisfy 0 <= k < number of nodes (" + std::to_string(g.node_count()) + ")");
        }
        metrics = compute_metrics(g, detail::eigen_options(c));
        const auto ranking = rank(g, *metrics, detail::parse_weights(c.weights));
        for (int i = 0; i < c.k; ++i) {
            targets.push_back(ranking.entries[static_cast<std::size_t>(i)].id);
        }
    }
    const auto report = perturbation_report(g, targets, opts);
    const auto after = remove_nodes(g, targets).graph;
    const auto dir = detail::output_dir(c);
    detail::write_file(dir / "perturbation.csv", [&](std::ostream& f) { reports::write_perturbation_csv(f, report); });
    detail::write_file(dir / "perturbation.txt", [&](std::ostream& f) { reports::write_perturbation_summary(f, report); });
    detail::write_file(dir / "before.gexf", [&](std::ostream& f) { export_gexf(f, g); });
    detail::write_file(dir / "after.gexf", [&](std::ostream& f) { export_gexf(f, after); });
    if (metrics && c.k >= 1) {
        const auto rows = comparative_analysis(g, *metrics, static_cast<std::size_t>(c.k), opts,
                                               detail::parse_weights(c.weights));
        detail::write_file(dir / "comparative.csv", [&](std::ostream& f) { reports::write_comparative_csv(f, g, rows); });
    }
    reports::write_perturbation_summary(out, report);
    return 0;
}

inline int cmd_stats(const RunConfig& c, std::ostream& out) {
    if (c.messages.empty()) {
        throw CommandError("stats needs --messages");
    }
    auto in = detail::open_input(c.messages);
    const auto parsed = read_messages(in, c.message_columns, detail::time_format(c), c.messages);
    std::set<std::string> channels;
    for (const auto& ch : c.channels) {
        if (!normalize_id(ch).empty()) channels.insert(normalize_id(ch));
    }
    std::vector<MessageRecord> selected;
    for (const auto& r : parsed.records) {
        if (channels.empty() || channels.contains(normalize_id(r.channel_name))) selected.push_back(r);
    }
    const auto summary = engagement_summary(selected);
    const auto series = posting_frequency(selected, detail::parse_bucket(c.bucket));
    const auto dir = detail::output_dir(c);
    detail::write_file(dir / "engagement.csv", [&](std::ostream& f) { reports::write_engagement_csv(f, summary); });
    detail::write_file(dir / "posting_frequency.csv", [&](std::ostream& f) { reports::write_posting_csv(f, series); });
    detail::write_file(dir / "rejects.csv", [&](std::ostream& f) { reports::write_rejects_csv(f, parsed.rejects); });
    out << "messages=" << selected.size() << '\n'
        << "channels=" << summary.size() << '\n'
        << "buckets=" << series.counts.size() << '\n'
        << "rejected_rows=" << parsed.rejects.size() << '\n';
    return 0;
}

inline int cmd_export(const RunConfig& c, std::ostream& out) {
    const auto g = detail::load_graph(c);
    const auto dir = detail::output_dir(c);
    if (c.format == "gexf" || c.format == "both") {
        detail::write_file(dir / "graph.gexf", [&](std::ostream& f) { export_gexf(f, g); });
    }
    if (c.format == "edgelist" || c.format == "both") {
        detail::write_file(dir / "edges.tsv", [&](std::ostream& f) { write_edge_list(f, g); });
    }
    out << "nodes=" << g.node_count() << '\n' << "edges=" << g.edge_count() << '\n';
    return 0;
}

/// Parses `args` (without the program name), runs the chosen subcommand and
/// returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Bridge node identification for directed message-forwarding networks", "bridgescore"};
    app.require_subcommand(1);
    RunConfig c;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--messages", c.messages, "Message export CSV")->envname("BRIDGESCORE_MESSAGES");
        sub->add_option("--chats", c.chats, "Collected-chats export CSV")->envname("BRIDGESCORE_CHATS");
        sub->add_option("--graph", c.graph, "Graph file (.gexf or tab-separated edge list)")->envname("BRIDGESCORE_GRAPH");
        sub->add_option("--cutoff", c.cutoff, "Keep forwards at or after this UTC instant")
            ->envname("BRIDGESCORE_CUTOFF")
            ->capture_default_str();
        sub->add_option("--time-format", c.time_format, "strptime format for timestamps (default ISO-8601)")
            ->envname("BRIDGESCORE_TIME_FORMAT");
        sub->add_option("--resolution", c.resolution, "Louvain resolution")
            ->envname("BRIDGESCORE_RESOLUTION")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--k", c.k, "Number of top nodes to remove")->envname("BRIDGESCORE_K")->capture_default_str();
        sub->add_option("--weights", c.weights, "Bridge Score weights w_i,w_e,w_c")
            ->envname("BRIDGESCORE_WEIGHTS")
            ->capture_default_str();
        sub->add_option("--grid", c.grid, "Integer weight range lo..hi")->envname("BRIDGESCORE_GRID")->capture_default_str();
        sub->add_option("--seed", c.seed, "Louvain visit-order seed")->envname("BRIDGESCORE_SEED")->capture_default_str();
        sub->add_option("--out", c.out, "Output directory")->envname("BRIDGESCORE_OUT")->capture_default_str();
        sub->add_option("--eig-tol", c.eig_tol, "Eigenvector convergence tolerance")
            ->envname("BRIDGESCORE_EIG_TOL")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--eig-max-iter", c.eig_max_iter, "Eigenvector iteration cap")
            ->envname("BRIDGESCORE_EIG_MAX_ITER")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_flag("--directed-density", c.directed_density, "Use |E|/(|V|(|V|-1)) instead of 2|E|/(|V|(|V|-1))")
            ->envname("BRIDGESCORE_DIRECTED_DENSITY");
        sub->add_flag("--no-damping", c.no_damping, "Plain power method without teleport")
            ->envname("BRIDGESCORE_NO_DAMPING");
        sub->add_option("--threads", c.threads, "Worker threads for the grid search (0 = all cores)")
            ->envname("BRIDGESCORE_THREADS");
        auto& mc = c.message_columns;
        auto& cc = c.chat_columns;
        sub->add_option("--col-channel", mc.channel, "Message column: receiving channel")->capture_default_str();
        sub->add_option("--col-forward", mc.forward_from, "Message column: forward origin")->capture_default_str();
        sub->add_option("--col-date", mc.date, "Message column: timestamp")->capture_default_str();
        sub->add_option("--col-msg-id", mc.message_id, "Message column: message id")->capture_default_str();
        sub->add_option("--col-views", mc.views, "Message column: views")->capture_default_str();
        sub->add_option("--col-forwards", mc.forwards, "Message column: forward count")->capture_default_str();
        sub->add_option("--col-replies", mc.replies, "Message column: reply count")->capture_default_str();
        sub->add_option("--col-username", cc.username, "Chats column: discovered channel")->capture_default_str();
        sub->add_option("--col-source", cc.source, "Chats column: seed channel")->capture_default_str();
        sub->add_option("--col-collected-at", cc.collected_at, "Chats column: collection time")->capture_default_str();
    };

    auto* ingest = app.add_subcommand("ingest", "Build the forwarding graph from CSV exports");
    auto* analyze = app.add_subcommand("analyze", "Per-node metrics, Bridge Score ranking and communities");
    auto* optimize = app.add_subcommand("optimize", "Weight grid search with perturbation analysis");
    auto* perturb = app.add_subcommand("perturb", "Remove nodes and report network disruption");
    auto* stats = app.add_subcommand("stats", "Engagement summary and posting frequency");
    auto* exp = app.add_subcommand("export", "Convert a graph to GEXF and/or edge list");
    for (auto* sub : {ingest, analyze, optimize, perturb, stats, exp}) {
        common(sub);
    }
    auto* remove_opt = perturb->add_option("--remove", c.remove, "Comma-separated channel ids to remove instead of the top k")
                           ->delimiter(',')
                           ->expected(0, -1);
    stats->add_option("--bucket", c.bucket, "Bucket length: N[s|m|h|d|w]")->capture_default_str();
    stats->add_option("--channels", c.channels, "Restrict to these channels")->delimiter(',');
    exp->add_option("--format", c.format, "gexf, edgelist or both")
        ->check(CLI::IsMember({"gexf", "edgelist", "both"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    c.remove_given = remove_opt->count() > 0;

    try {
        if (ingest->parsed()) return cmd_ingest(c, out);
        if (analyze->parsed()) return cmd_analyze(c, out);
        if (optimize->parsed()) return cmd_optimize(c, out);
        if (perturb->parsed()) return cmd_perturb(c, out);
        if (stats->parsed()) return cmd_stats(c, out);
        if (exp->parsed()) return cmd_export(c, out);
    } catch (const CommandError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace bridgescore::cli
