#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "bridgescore/community.hpp"
#include "bridgescore/csv.hpp"
#include "bridgescore/error.hpp"
#include "bridgescore/graph.hpp"
#include "bridgescore/metrics.hpp"

namespace bridgescore {

/// Optional per-node data carried as GEXF node attributes. Each vector, when
/// present, is indexed by NodeIndex and covers every node.
struct GexfAnnotations {
    std::optional<std::vector<NodeMetrics>> metrics;
    std::optional<std::vector<double>> bridge_scores;
    std::optional<std::vector<CommunityId>> communities;

    friend bool operator==(const GexfAnnotations&, const GexfAnnotations&) = default;
};

struct GexfDocument {
    ForwardGraph graph;
    GexfAnnotations annotations;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

// Attribute ids are fixed so documents diff cleanly.
struct GexfAttr {
    const char* id;
    const char* title;
    const char* type;
};
inline constexpr GexfAttr attr_is_seed{"0", "is_seed", "boolean"};
inline constexpr GexfAttr attr_indegree{"1", "indegree", "integer"};
inline constexpr GexfAttr attr_indegree_norm{"2", "indegree_norm", "double"};
inline constexpr GexfAttr attr_eigenvector{"3", "eigenvector", "double"};
inline constexpr GexfAttr attr_eigenvector_norm{"4", "eigenvector_norm", "double"};
inline constexpr GexfAttr attr_clustering{"5", "clustering", "double"};
inline constexpr GexfAttr attr_clustering_norm{"6", "clustering_norm", "double"};
inline constexpr GexfAttr attr_bridge_score{"7", "bridge_score", "double"};
inline constexpr GexfAttr attr_community{"8", "community", "integer"};

} // namespace detail

/// Writes a GEXF 1.2 document with directed edges. Edge weights carry the
/// forwarding multiplicity; annotations become node attributes.
inline void export_gexf(std::ostream& out, const ForwardGraph& g, const GexfAnnotations& ann = {}) {
    using namespace detail;
    const auto check = [&](const auto& v, const char* what) {
        if (v && v->size() != g.node_count()) {
            throw Error(ErrorKind::invalid_argument, std::string(what) + " do not cover every node");
        }
    };
    check(ann.metrics, "metrics");
    check(ann.bridge_scores, "bridge scores");
    check(ann.communities, "community ids");

    std::vector<GexfAttr> declared{attr_is_seed};
    if (ann.metrics) {
        declared.insert(declared.end(), {attr_indegree, attr_indegree_norm, attr_eigenvector, attr_eigenvector_norm,
                                         attr_clustering, attr_clustering_norm});
    }
    if (ann.bridge_scores) {
        declared.push_back(attr_bridge_score);
    }
    if (ann.communities) {
        declared.push_back(attr_community);
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
        << "    <attributes class=\"node\">\n";
    for (const auto& a : declared) {
        out << "      <attribute id=\"" << a.id << "\" title=\"" << a.title << "\" type=\"" << a.type << "\"/>\n";
    }
    out << "    </attributes>\n    <nodes>\n";
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto& node = g.node(v);
        out << "      <node id=\"" << xml_escape(node.id) << "\" label=\"" << xml_escape(node.label) << "\">\n"
            << "        <attvalues>\n";
        const auto value = [&](const GexfAttr& a, const std::string& text) {
            out << "          <attvalue for=\"" << a.id << "\" value=\"" << text << "\"/>\n";
        };
        value(attr_is_seed, node.is_seed ? "true" : "false");
        if (ann.metrics) {
            const auto& m = (*ann.metrics)[v];
            value(attr_indegree, std::to_string(m.indegree));
            if (m.indegree_norm) value(attr_indegree_norm, csv::format_double(*m.indegree_norm));
            value(attr_eigenvector, csv::format_double(m.eigenvector));
            if (m.eigenvector_norm) value(attr_eigenvector_norm, csv::format_double(*m.eigenvector_norm));
            value(attr_clustering, csv::format_double(m.clustering));
            if (m.clustering_norm) value(attr_clustering_norm, csv::format_double(*m.clustering_norm));
        }
        if (ann.bridge_scores) {
            value(attr_bridge_score, csv::format_double((*ann.bridge_scores)[v]));
        }
        if (ann.communities) {
            value(attr_community, std::to_string((*ann.communities)[v]));
        }
        out << "        </attvalues>\n      </node>\n";
    }
    out << "    </nodes>\n    <edges>\n";
    std::size_t id = 0;
    for (const auto& e : g.edges()) {
        out << "      <edge id=\"" << id++ << "\" source=\"" << xml_escape(g.node(e.source).id) << "\" target=\""
            << xml_escape(g.node(e.target).id) << "\" weight=\"" << e.weight << "\"/>\n";
    }
    out << "    </edges>\n  </graph>\n</gexf>\n";
    if (!out) {
        throw Error(ErrorKind::io, "failed writing GEXF document");
    }
}

/// Reads a directed GEXF 1.2 document. Rejects undirected edges, unknown
/// versions and edges whose endpoints are not declared nodes.
inline GexfDocument import_gexf(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorKind::parse, std::string("malformed XML: ") + e.what());
    }
    const auto root = tree.get_child_optional("gexf");
    if (!root) {
        throw Error(ErrorKind::parse, "<gexf>: root element missing");
    }
    const auto version = root->get_optional<std::string>("<xmlattr>.version");
    if (!version || (*version != "1.2" && *version != "1.2draft")) {
        throw Error(ErrorKind::parse, "<gexf>: unsupported version '" + version.value_or("") + "'");
    }
    const auto graph = root->get_child_optional("graph");
    if (!graph) {
        throw Error(ErrorKind::parse, "<graph>: element missing");
    }
    const auto edge_default = graph->get<std::string>("<xmlattr>.defaultedgetype", "undirected");
    if (edge_default != "directed") {
        throw Error(ErrorKind::parse, "<graph>: defaultedgetype '" + edge_default + "' is not directed");
    }

    // title -> declared id for node attributes
    std::map<std::string, std::string> attr_ids;
    for (const auto& [tag, block] : *graph) {
        if (tag != "attributes" || block.get<std::string>("<xmlattr>.class", "") != "node") {
            continue;
        }
        for (const auto& [atag, attr] : block) {
            if (atag == "attribute") {
                attr_ids[attr.get<std::string>("<xmlattr>.title", "")] = attr.get<std::string>("<xmlattr>.id", "");
            }
        }
    }
    const auto declared = [&](const detail::GexfAttr& a) -> std::optional<std::string> {
        if (auto it = attr_ids.find(a.title); it != attr_ids.end()) {
            return it->second;
        }
        return std::nullopt;
    };

    GexfDocument doc;
    auto& g = doc.graph;
    const auto seed_attr = declared(detail::attr_is_seed);
    const bool has_metrics = declared(detail::attr_indegree).has_value();
    const auto bridge_attr = declared(detail::attr_bridge_score);
    const auto community_attr = declared(detail::attr_community);
    if (has_metrics) doc.annotations.metrics.emplace();
    if (bridge_attr) doc.annotations.bridge_scores.emplace();
    if (community_attr) doc.annotations.communities.emplace();

    if (const auto nodes = graph->get_child_optional("nodes")) {
        for (const auto& [tag, node] : *nodes) {
            if (tag != "node") {
                continue;
            }
            const auto raw_id = node.get<std::string>("<xmlattr>.id", "");
            const std::string where = "<node id=\"" + raw_id + "\">";
            const auto id = normalize_id(raw_id);
            if (id.empty()) {
                throw Error(ErrorKind::parse, where + ": empty id");
            }
            if (g.find(id)) {
                throw Error(ErrorKind::parse, where + ": duplicate node id");
            }
            std::map<std::string, std::string> values;
            if (const auto att = node.get_child_optional("attvalues")) {
                for (const auto& [vtag, v] : *att) {
                    if (vtag == "attvalue") {
                        values[v.get<std::string>("<xmlattr>.for", "")] = v.get<std::string>("<xmlattr>.value", "");
                    }
                }
            }
            const auto lookup = [&](const std::optional<std::string>& attr) -> std::optional<std::string> {
                if (!attr) return std::nullopt;
                if (auto it = values.find(*attr); it != values.end()) return it->second;
                return std::nullopt;
            };
            const auto number = [&](const detail::GexfAttr& a) -> std::optional<double> {
                const auto text = lookup(declared(a));
                if (!text) return std::nullopt;
                if (const auto d = csv::parse_double(trim(*text))) return d;
                throw Error(ErrorKind::parse, where + ": attribute '" + a.title + "' is not a number");
            };
            const auto required = [&](const detail::GexfAttr& a) {
                if (const auto d = number(a)) return *d;
                throw Error(ErrorKind::parse, where + ": attribute '" + a.title + "' missing");
            };

            ChannelNode cn{id, node.get<std::string>("<xmlattr>.label", raw_id), false};
            cn.label = display_label(cn.label).empty() ? id : cn.label;
            if (const auto seed = lookup(seed_attr)) {
                cn.is_seed = *seed == "true" || *seed == "1";
            }
            g.add_node(std::move(cn));
            if (has_metrics) {
                NodeMetrics m;
                m.indegree = static_cast<std::uint64_t>(required(detail::attr_indegree));
                m.eigenvector = required(detail::attr_eigenvector);
                m.clustering = required(detail::attr_clustering);
                m.indegree_norm = number(detail::attr_indegree_norm);
                m.eigenvector_norm = number(detail::attr_eigenvector_norm);
                m.clustering_norm = number(detail::attr_clustering_norm);
                doc.annotations.metrics->push_back(m);
            }
            if (bridge_attr) {
                doc.annotations.bridge_scores->push_back(required(detail::attr_bridge_score));
            }
            if (community_attr) {
                const double c = required(detail::attr_community);
                if (c < 0 || c != static_cast<double>(static_cast<CommunityId>(c))) {
                    throw Error(ErrorKind::parse, where + ": community must be a non-negative integer");
                }
                doc.annotations.communities->push_back(static_cast<CommunityId>(c));
            }
        }
    }

    if (const auto edges = graph->get_child_optional("edges")) {
        std::size_t ordinal = 0;
        for (const auto& [tag, edge] : *edges) {
            if (tag != "edge") {
                continue;
            }
            const auto eid = edge.get<std::string>("<xmlattr>.id", std::to_string(ordinal));
            ++ordinal;
            const std::string where = "<edge id=\"" + eid + "\">";
            const auto type = edge.get<std::string>("<xmlattr>.type", "directed");
            if (type != "directed") {
                throw Error(ErrorKind::parse, where + ": edge type '" + type + "' is not directed");
            }
            const auto source = edge.get<std::string>("<xmlattr>.source", "");
            const auto target = edge.get<std::string>("<xmlattr>.target", "");
            const auto s = g.find(source);
            const auto t = g.find(target);
            if (!s) {
                throw Error(ErrorKind::parse, where + ": source '" + source + "' is not a declared node");
            }
            if (!t) {
                throw Error(ErrorKind::parse, where + ": target '" + target + "' is not a declared node");
            }
            EdgeWeight weight = 1;
            if (const auto text = edge.get_optional<std::string>("<xmlattr>.weight")) {
                const auto d = csv::parse_double(trim(*text));
                if (!d || *d < 1.0 || *d != static_cast<double>(static_cast<EdgeWeight>(*d))) {
                    throw Error(ErrorKind::parse, where + ": weight '" + *text + "' is not a positive integer");
                }
                weight = static_cast<EdgeWeight>(*d);
            }
            g.add_edge(*s, *t, weight);
        }
    }
    return doc;
}

} // namespace bridgescore
