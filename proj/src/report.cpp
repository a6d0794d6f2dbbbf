#include "papillon/report.hpp"

#include <sstream>

namespace papillon {

namespace {

nlohmann::json rational_json(const Rational& r) {
    nlohmann::json j;
    j["exact"] = rational_str(r);
    j["approx"] = rational_approx(r);
    return j;
}

} // namespace

nlohmann::json config_json(const TopologyParams& params, const StrategyConfig* cfg,
                           const std::string& subcommand) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["family"] = family_name(params.family);
    switch (params.family) {
        case Family::Clockwise:
            j["kappa"] = params.kappa;
            j["m"] = params.m;
            break;
        case Family::Absolute:
            j["k"] = params.k;
            j["m"] = params.m;
            break;
        case Family::Xor:
            j["lambda"] = params.lambda;
            j["m"] = params.m;
            break;
        default:
            j["b"] = params.b;
            break;
    }
    j["max_nodes"] = params.max_nodes;
    if (cfg) {
        j["strategy"] = strategy_name(cfg->strategy);
        j["metric"] = metric_name(cfg->metric ? *cfg->metric
                                              : default_metric(params.family));
        j["strict_loop"] = cfg->strict_loop;
        j["seed"] = cfg->seed;
    }
    return j;
}

nlohmann::json topology_json(const Topology& topo) {
    nlohmann::json j;
    j["family"] = family_name(topo.params.family);
    j["n"] = topo.n;
    j["edge_count"] = topo.edge_count();
    nlohmann::json degrees;
    for (const auto& [deg, count] : topo.degree_histogram())
        degrees[std::to_string(deg)] = count;
    j["degree_histogram"] = degrees;
    j["warnings"] = topo.warnings;
    return j;
}

nlohmann::json stats_json(const StatsSummary& stats) {
    nlohmann::json j;
    j["pairs"] = stats.pairs;
    j["worst"] = stats.worst;
    j["worst_pair"] = {stats.worst_source, stats.worst_target};
    j["mean"] = rational_json(stats.mean);
    nlohmann::json hist;
    for (const auto& [len, mass] : stats.histogram)
        hist[std::to_string(len)] = rational_str(mass);
    j["histogram"] = hist;
    nlohmann::json phases;
    for (std::size_t i = 1; i < 4; ++i)
        if (stats.per_phase_max[i] > 0)
            phases[phase_name(static_cast<Phase>(i))] = stats.per_phase_max[i];
    j["per_phase_max"] = phases;
    j["phase_violations"] = stats.phase_violations;
    if (stats.sampled) j["sampled"] = stats.sample_count;
    return j;
}

nlohmann::json loads_json(const LoadProfile& loads) {
    nlohmann::json j;
    j["pairs"] = loads.pairs;
    j["edges"] = loads.loads.size();
    j["excluded_edges"] = loads.excluded.size();
    if (loads.pi) {
        j["pi"] = rational_json(*loads.pi);
    } else {
        j["pi"] = nullptr;
        j["pi_note"] = loads.pi_note;
    }
    j["min_load"] = rational_json(loads.min_load);
    j["max_load"] = rational_json(loads.max_load);
    j["total_load"] = rational_json(loads.total);
    if (loads.sampled) j["sampled"] = loads.sample_count;
    return j;
}

nlohmann::json checks_json(const std::vector<BoundCheck>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BoundCheck& c : checks) {
        nlohmann::json j;
        j["name"] = c.name;
        j["detail"] = c.detail;
        j["pass"] = c.pass;
        j["report_only"] = c.report_only;
        arr.push_back(j);
    }
    return arr;
}

nlohmann::json route_json(const Topology& topo, const Route& r,
                          const std::vector<Phase>* labels) {
    nlohmann::json j;
    j["source"] = r.source;
    j["target"] = r.target;
    j["length"] = r.length();
    nlohmann::json hops = nlohmann::json::array();
    for (std::size_t i = 0; i < r.hops.size(); ++i) {
        const Hop& h = r.hops[i];
        nlohmann::json hop;
        hop["from"] = h.from;
        hop["to"] = h.to;
        hop["kind"] = kind_string(h.kinds);
        hop["remaining"] = h.remaining;
        const Phase p = labels ? (*labels)[i] : h.phase;
        hop["phase"] = phase_name(p);
        hops.push_back(hop);
    }
    j["hops"] = hops;
    (void)topo;
    return j;
}

nlohmann::json witness_json(const WitnessScan& scan) {
    nlohmann::json j;
    j["count"] = scan.count;
    if (scan.witness) {
        nlohmann::json w;
        w["source"] = scan.witness->s;
        w["target"] = scan.witness->t;
        w["greedy_length"] = scan.witness->greedy_len;
        w["bfs_length"] = scan.witness->bfs_len;
        j["first"] = w;
    } else {
        j["first"] = nullptr;
    }
    return j;
}

nlohmann::json analyze_report(const Topology& topo, const StrategyConfig& cfg,
                              const AllPairsResult& result,
                              const std::vector<BoundCheck>& checks,
                              const WitnessScan* greedy_bfs) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", "papillon"}, {"version", kToolVersion}};
    j["config"] = config_json(topo.params, &cfg, "analyze");
    j["topology"] = topology_json(topo);
    j["stats"] = stats_json(result.stats);
    j["loads"] = loads_json(result.loads);
    j["checks"] = checks_json(checks);
    nlohmann::json witnesses;
    witnesses["longest_route"] = {{"source", result.stats.worst_source},
                                  {"target", result.stats.worst_target},
                                  {"length", result.stats.worst}};
    witnesses["greedy_exceeds_bfs"] =
        greedy_bfs ? witness_json(*greedy_bfs) : nlohmann::json(nullptr);
    j["witnesses"] = witnesses;
    return j;
}

nlohmann::json compare_report(const Topology& topo, const CompareResult& result) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", "papillon"}, {"version", kToolVersion}};
    j["config"] = config_json(topo.params, nullptr, "compare");
    j["topology"] = topology_json(topo);
    nlohmann::json strategies = nlohmann::json::array();
    for (const StrategyReport& rep : result.strategies) {
        nlohmann::json s;
        s["strategy"] = strategy_name(rep.config.strategy);
        s["strict_loop"] = rep.config.strict_loop;
        s["stats"] = stats_json(rep.stats);
        s["loads"] = loads_json(rep.loads);
        s["checks"] = checks_json(rep.checks);
        strategies.push_back(s);
    }
    j["strategies"] = strategies;
    j["witnesses"] = {{"greedy_exceeds_bfs", witness_json(result.greedy_bfs)}};
    return j;
}

std::string report_csv(const nlohmann::json& report) {
    std::ostringstream out;
    out << "section,key,value\n";
    auto flat = [&](const nlohmann::json& obj, const std::string& section,
                    auto&& self) -> void {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it->is_object()) {
                self(*it, section + "." + it.key(), self);
            } else if (it->is_array()) {
                out << section << ',' << it.key() << ",\"" << it->dump() << "\"\n";
            } else {
                out << section << ',' << it.key() << ',';
                if (it->is_string())
                    out << it->get<std::string>();
                else
                    out << it->dump();
                out << '\n';
            }
        }
    };
    for (auto it = report.begin(); it != report.end(); ++it) {
        if (it->is_object())
            flat(*it, it.key(), flat);
        else
            out << "root," << it.key() << ',' << it->dump() << '\n';
    }
    return out.str();
}

std::string report_text(const nlohmann::json& report) {
    std::ostringstream out;
    const auto& topo = report["topology"];
    out << "family " << topo["family"].get<std::string>() << ", n="
        << topo["n"].get<std::uint64_t>() << ", edges="
        << topo["edge_count"].get<std::uint64_t>() << "\n";
    auto stats_block = [&](const nlohmann::json& s, const std::string& label) {
        out << label << ": pairs=" << s["pairs"].get<std::uint64_t>()
            << " worst=" << s["worst"].get<std::uint64_t>() << " mean="
            << s["mean"]["exact"].get<std::string>() << " (~"
            << s["mean"]["approx"].get<double>() << ")\n";
    };
    auto loads_block = [&](const nlohmann::json& l) {
        out << "  loads: edges=" << l["edges"].get<std::uint64_t>()
            << " excluded=" << l["excluded_edges"].get<std::uint64_t>();
        if (l["pi"].is_null())
            out << " pi=undefined (" << l.value("pi_note", std::string()) << ")";
        else
            out << " pi=" << l["pi"]["exact"].get<std::string>();
        out << "\n";
    };
    auto checks_block = [&](const nlohmann::json& arr) {
        for (const auto& c : arr)
            out << "  [" << (c["pass"].get<bool>() ? "ok" : "FAIL")
                << (c["report_only"].get<bool>() ? "/report" : "") << "] "
                << c["name"].get<std::string>() << ": "
                << c["detail"].get<std::string>() << "\n";
    };
    if (report.contains("stats")) {
        stats_block(report["stats"], "stats");
        loads_block(report["loads"]);
        checks_block(report["checks"]);
    }
    if (report.contains("strategies")) {
        for (const auto& s : report["strategies"]) {
            stats_block(s["stats"], s["strategy"].get<std::string>());
            loads_block(s["loads"]);
            checks_block(s["checks"]);
        }
    }
    if (report.contains("witnesses")) {
        const auto& w = report["witnesses"]["greedy_exceeds_bfs"];
        if (!w.is_null()) {
            if (w["first"].is_null()) {
                out << "greedy vs bfs: no pair where greedy is longer\n";
            } else {
                const auto& f = w["first"];
                out << "greedy vs bfs: " << w["count"].get<std::uint64_t>()
                    << " pair(s) where greedy is longer; first " << f["source"]
                    << "->" << f["target"] << " greedy="
                    << f["greedy_length"] << " bfs=" << f["bfs_length"] << "\n";
            }
        }
    }
    return out.str();
}

std::string route_text(const Topology& topo, const Route& r,
                       const std::vector<Phase>* labels) {
    std::ostringstream out;
    out << "route " << r.source << " -> " << r.target << ": " << r.length()
        << " hop" << (r.length() == 1 ? "" : "s") << "\n";
    for (std::size_t i = 0; i < r.hops.size(); ++i) {
        const Hop& h = r.hops[i];
        const Phase p = labels ? (*labels)[i] : h.phase;
        out << "  " << h.from << " -> " << h.to << " [" << kind_string(h.kinds)
            << "] phase=" << phase_name(p) << " remaining=" << h.remaining << "\n";
    }
    (void)topo;
    return out.str();
}

std::string topology_text(const Topology& topo) {
    std::ostringstream out;
    out << "family " << family_name(topo.params.family);
    switch (topo.params.family) {
        case Family::Clockwise:
            out << " kappa=" << topo.params.kappa << " m=" << topo.params.m;
            break;
        case Family::Absolute:
            out << " k=" << topo.params.k << " m=" << topo.params.m;
            break;
        case Family::Xor:
            out << " lambda=" << topo.params.lambda << " m=" << topo.params.m;
            break;
        default:
            out << " b=" << topo.params.b;
            break;
    }
    out << "\nn=" << topo.n << " edges=" << topo.edge_count() << "\n";
    out << "out-degree histogram:";
    for (const auto& [deg, count] : topo.degree_histogram())
        out << " " << deg << "->" << count;
    out << "\n";
    for (const std::string& w : topo.warnings) out << "warning: " << w << "\n";
    return out.str();
}

bool any_assertive_failure(const std::vector<BoundCheck>& checks) {
    for (const BoundCheck& c : checks)
        if (!c.pass && !c.report_only) return true;
    return false;
}

} // namespace papillon
