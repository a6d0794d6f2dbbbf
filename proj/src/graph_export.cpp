#include "papillon/graph_export.hpp"

#include <sstream>

#include "json.hpp"

namespace papillon {

namespace {

nlohmann::json params_json(const TopologyParams& p) {
    nlohmann::json j;
    j["family"] = family_name(p.family);
    switch (p.family) {
        case Family::Clockwise:
            j["kappa"] = p.kappa;
            j["m"] = p.m;
            break;
        case Family::Absolute:
            j["k"] = p.k;
            j["m"] = p.m;
            break;
        case Family::Xor:
            j["lambda"] = p.lambda;
            j["m"] = p.m;
            break;
        default:
            j["b"] = p.b;
            break;
    }
    return j;
}

} // namespace

std::string export_format_name(ExportFormat f) {
    switch (f) {
        case ExportFormat::EdgeList: return "edgelist";
        case ExportFormat::Dot: return "dot";
        case ExportFormat::Json: return "json";
    }
    return "?";
}

std::string export_graph(const Topology& topo, ExportFormat format,
                         std::uint8_t kind_filter) {
    switch (format) {
        case ExportFormat::EdgeList: {
            std::ostringstream out;
            std::uint64_t written = 0;
            for (NodeId u = 0; u < topo.n; ++u) {
                for (const Edge& e : topo.adj[u]) {
                    if (!(e.kinds & kind_filter)) continue;
                    out << u << ' ' << e.to << ' ' << kind_string(e.kinds) << '\n';
                    ++written;
                }
            }
            if (written == 0) return "# empty edge selection\n";
            return out.str();
        }
        case ExportFormat::Dot: {
            std::ostringstream out;
            out << "digraph " << family_name(topo.params.family) << " {\n";
            for (NodeId u = 0; u < topo.n; ++u)
                for (const Edge& e : topo.adj[u])
                    if (e.kinds & kind_filter)
                        out << "  " << u << " -> " << e.to << " [kind=\""
                            << kind_string(e.kinds) << "\"];\n";
            out << "}\n";
            return out.str();
        }
        case ExportFormat::Json: {
            nlohmann::json j;
            j["params"] = params_json(topo.params);
            j["n"] = topo.n;
            j["warnings"] = topo.warnings;
            nlohmann::json nodes = nlohmann::json::array();
            for (NodeId u = 0; u < topo.n; ++u) {
                nlohmann::json node;
                node["id"] = u;
                if (topo.params.family != Family::ChordClockwise &&
                    topo.params.family != Family::ChordBidirectional)
                    node["level"] = topo.level(u);
                nlohmann::json edges = nlohmann::json::array();
                for (const Edge& e : topo.adj[u]) {
                    if (!(e.kinds & kind_filter)) continue;
                    nlohmann::json je;
                    je["to"] = e.to;
                    je["kind"] = kind_string(e.kinds);
                    je["annotation"] = e.annotation;
                    edges.push_back(je);
                }
                node["edges"] = edges;
                nodes.push_back(node);
            }
            j["nodes"] = nodes;
            return j.dump(2) + "\n";
        }
    }
    throw ParameterError("unknown export format");
}

} // namespace papillon
