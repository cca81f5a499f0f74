#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bridgescore/csv.hpp"
#include "bridgescore/graph.hpp"

namespace bridgescore {

/// Writes `source<TAB>target<TAB>weight` lines. Nodes without any edge are
/// written as a line holding just the node label so the node set survives.
inline void write_edge_list(std::ostream& out, const ForwardGraph& g) {
    std::vector<bool> touched(g.node_count(), false);
    for (const auto& e : g.edges()) {
        touched[e.source] = touched[e.target] = true;
        out << g.node(e.source).label << '\t' << g.node(e.target).label << '\t' << e.weight << '\n';
    }
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (!touched[v]) {
            out << g.node(v).label << '\n';
        }
    }
}

/// Inverse of write_edge_list. Blank lines and lines starting with '#' are skipped.
inline ForwardGraph read_edge_list(std::istream& in) {
    ForwardGraph g;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty() || line.front() == '#') {
            continue;
        }
        fields.clear();
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) {
                break;
            }
            start = tab + 1;
        }
        const auto where = "edge list line " + std::to_string(line_no);
        try {
            if (fields.size() == 1) {
                g.add_node(fields[0]);
                continue;
            }
            if (fields.size() != 3) {
                throw Error(ErrorKind::parse, where + ": expected 3 tab-separated fields, got " +
                                                  std::to_string(fields.size()));
            }
            const auto w = csv::parse_int(trim(fields[2]));
            if (!w || *w <= 0) {
                throw Error(ErrorKind::parse, where + ": weight '" + fields[2] + "' is not a positive integer");
            }
            g.add_edge(fields[0], fields[1], static_cast<EdgeWeight>(*w));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::parse) {
                throw;
            }
            throw Error(ErrorKind::parse, where + ": " + e.what());
        }
    }
    return g;
}

} // namespace bridgescore
