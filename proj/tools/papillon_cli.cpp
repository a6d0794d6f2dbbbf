// papillon: build butterfly ring overlays, route over them with the four
// strategies, and verify the hop and congestion bounds exhaustively.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "papillon/analysis.hpp"
#include "papillon/graph_export.hpp"
#include "papillon/report.hpp"

namespace {

using namespace papillon;

struct CommonOpts {
    std::string family;
    std::uint32_t kappa = 0, k = 0, lambda = 0, m = 0, b = 0;
    std::uint64_t max_nodes = 1'000'000;
    std::string output;
    std::string format;
};

struct StrategyOpts {
    std::vector<std::string> strategies;
    std::string metric;
    bool strict_loop = true;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t max_hops = 0;
    unsigned workers = 1;
    std::uint64_t sample = 0;
};

void add_topology_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--family", opts.family,
                    "clockwise | absolute | xor | chord-clockwise | chord-bidirectional")
        ->required();
    cmd->add_option("--kappa", opts.kappa, "links per node (clockwise family)");
    cmd->add_option("-k,--k", opts.k, "balanced digit bound (absolute family)");
    cmd->add_option("--lambda", opts.lambda, "radix, a power of two (xor family)");
    cmd->add_option("-m,--m", opts.m, "levels (butterfly families)");
    cmd->add_option("-b,--b", opts.b, "ring exponent, n = 2^b (chord baselines)");
    cmd->add_option("--max-nodes", opts.max_nodes, "hard cap on the node count");
    cmd->add_option("--output", opts.output,
                    "output path; relative paths resolve under $PAPILLON_OUTPUT_DIR");
}

TopologyParams make_params(const CommonOpts& opts) {
    const auto fam = family_from_name(opts.family);
    if (!fam) throw ParameterError("unknown family '" + opts.family + "'");
    TopologyParams p;
    p.family = *fam;
    p.kappa = opts.kappa;
    p.k = opts.k;
    p.lambda = opts.lambda;
    p.m = opts.m;
    p.b = opts.b;
    p.max_nodes = opts.max_nodes;
    return p;
}

StrategyConfig make_config(const Topology& topo, const StrategyOpts& sopts,
                           const std::string& strategy_name_str) {
    const auto strat = strategy_from_name(strategy_name_str);
    if (!strat) throw ParameterError("unknown strategy '" + strategy_name_str + "'");
    StrategyConfig cfg;
    cfg.strategy = *strat;
    if (!sopts.metric.empty()) {
        const auto met = metric_from_name(sopts.metric);
        if (!met) throw ParameterError("unknown metric '" + sopts.metric + "'");
        cfg.metric = met;
    }
    cfg.strict_loop = sopts.strict_loop;
    cfg.seed = sopts.seed;
    cfg.max_hops = sopts.max_hops;
    validate_config(topo, cfg);
    return cfg;
}

void emit(const std::string& content, const std::string& output) {
    if (output.empty()) {
        std::cout << content;
        return;
    }
    std::string path = output;
    if (const char* dir = std::getenv("PAPILLON_OUTPUT_DIR");
        dir && !output.empty() && output.front() != '/')
        path = std::string(dir) + "/" + output;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("write to '" + path + "' failed");
}

int cmd_build(const CommonOpts& copts) {
    const Topology topo = build(make_params(copts));
    if (copts.format == "json") {
        nlohmann::json j;
        j["schema_version"] = kReportSchemaVersion;
        j["config"] = config_json(topo.params, nullptr, "build");
        j["topology"] = topology_json(topo);
        emit(j.dump(2) + "\n", copts.output);
    } else {
        emit(topology_text(topo), copts.output);
    }
    return 0;
}

int cmd_route(const CommonOpts& copts, const StrategyOpts& sopts, std::uint64_t from,
              std::uint64_t to) {
    const Topology topo = build(make_params(copts));
    if (sopts.strategies.size() != 1)
        throw ParameterError("route takes exactly one --strategy");
    const StrategyConfig cfg = make_config(topo, sopts, sopts.strategies[0]);
    const Route r = route(topo, cfg, from, to);

    std::vector<Phase> labels;
    const std::vector<Phase>* labels_ptr = nullptr;
    bool phase_violation = false;
    if (cfg.strategy == Strategy::Greedy &&
        (topo.params.family == Family::Clockwise ||
         topo.params.family == Family::Absolute)) {
        const PhaseScan scan = scan_phases(r, topo);
        labels = scan.labels;
        labels_ptr = &labels;
        phase_violation = !scan.monotone || !scan.caps_ok;
    }
    if (copts.format == "json") {
        nlohmann::json j;
        j["schema_version"] = kReportSchemaVersion;
        j["config"] = config_json(topo.params, &cfg, "route");
        j["route"] = route_json(topo, r, labels_ptr);
        j["phase_violation"] = phase_violation;
        emit(j.dump(2) + "\n", copts.output);
    } else {
        emit(route_text(topo, r, labels_ptr), copts.output);
    }
    if (phase_violation) {
        std::cerr << "error: phase labels break the per-phase caps or monotonicity\n";
        return static_cast<int>(ExitCode::Invariant);
    }
    return 0;
}

int cmd_analyze(const CommonOpts& copts, const StrategyOpts& sopts) {
    const Topology topo = build(make_params(copts));
    if (sopts.strategies.size() != 1)
        throw ParameterError("analyze takes exactly one --strategy");
    const StrategyConfig cfg = make_config(topo, sopts, sopts.strategies[0]);

    const AllPairsResult result =
        sopts.sample > 0 ? sampled_analysis(topo, cfg, sopts.sample)
                         : analyze_all_pairs(topo, cfg, sopts.workers);
    const std::vector<BoundCheck> checks =
        theorem_checks(topo, cfg, result.stats, &result.loads);

    WitnessScan scan;
    const WitnessScan* scan_ptr = nullptr;
    if (cfg.strategy == Strategy::Greedy && sopts.sample == 0) {
        scan = greedy_vs_bfs(topo);
        scan_ptr = &scan;
    }
    const nlohmann::json report = analyze_report(topo, cfg, result, checks, scan_ptr);
    if (copts.format == "csv")
        emit(report_csv(report), copts.output);
    else if (copts.format == "text")
        emit(report_text(report), copts.output);
    else
        emit(report.dump(2) + "\n", copts.output);
    return any_assertive_failure(checks) ? static_cast<int>(ExitCode::Invariant) : 0;
}

int cmd_compare(const CommonOpts& copts, const StrategyOpts& sopts) {
    const Topology topo = build(make_params(copts));
    if (sopts.strategies.empty())
        throw ParameterError("compare needs at least one --strategy");
    std::vector<StrategyConfig> configs;
    for (const std::string& name : sopts.strategies)
        configs.push_back(make_config(topo, sopts, name));

    const CompareResult result = compare_strategies(topo, configs, sopts.workers);
    const nlohmann::json report = compare_report(topo, result);
    if (copts.format == "csv")
        emit(report_csv(report), copts.output);
    else if (copts.format == "text")
        emit(report_text(report), copts.output);
    else
        emit(report.dump(2) + "\n", copts.output);

    for (const StrategyReport& rep : result.strategies)
        if (any_assertive_failure(rep.checks))
            return static_cast<int>(ExitCode::Invariant);
    return 0;
}

int cmd_export(const CommonOpts& copts, const std::vector<std::string>& kinds) {
    const Topology topo = build(make_params(copts));
    ExportFormat format = ExportFormat::EdgeList;
    if (copts.format == "dot")
        format = ExportFormat::Dot;
    else if (copts.format == "json")
        format = ExportFormat::Json;
    else if (!copts.format.empty() && copts.format != "edgelist")
        throw ParameterError("unknown export format '" + copts.format + "'");

    std::uint8_t filter = 0xFF;
    if (!kinds.empty()) {
        filter = 0;
        for (const std::string& kind : kinds) {
            if (kind == "short") filter |= kShort;
            else if (kind == "long") filter |= kLong;
            else if (kind == "back") filter |= kBack;
            else if (kind == "finger") filter |= kFinger;
            else throw ParameterError("unknown edge kind '" + kind + "'");
        }
    }
    emit(export_graph(topo, format, filter), copts.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"papillon: butterfly ring overlays, greedy and congestion-free routing"};
    app.require_subcommand(1);

    CommonOpts copts;
    StrategyOpts sopts;
    std::uint64_t from = 0, to = 0;
    std::vector<std::string> export_kinds;

    auto add_strategy_flags = [&](CLI::App* cmd, bool strict_default) {
        sopts.strict_loop = strict_default;
        cmd->add_option("--strategy", sopts.strategies,
                        "greedy | hypercubic | congestion-free-random | "
                        "congestion-free-deterministic");
        cmd->add_option("--metric", sopts.metric, "clockwise | absolute | xor");
        cmd->add_flag("--strict-loop,!--no-strict-loop", sopts.strict_loop,
                      "run the full fixed-length phase II even when phase I lands on the target");
        cmd->add_option("--seed", sopts.seed, "seed for the randomized strategies");
        cmd->add_option("--max-hops", sopts.max_hops, "safety cap per route (0 = 4m default)");
        cmd->add_option("--workers", sopts.workers, "worker threads for all-pairs analysis");
    };

    CLI::App* build_cmd = app.add_subcommand("build", "construct a topology and summarize it");
    add_topology_flags(build_cmd, copts);
    build_cmd->add_option("--format", copts.format, "text | json");

    CLI::App* route_cmd = app.add_subcommand("route", "route one source-target pair");
    add_topology_flags(route_cmd, copts);
    add_strategy_flags(route_cmd, /*strict_default=*/false);
    route_cmd->add_option("--from", from, "source node")->required();
    route_cmd->add_option("--to", to, "target node")->required();
    route_cmd->add_option("--format", copts.format, "text | json");

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "exhaustive all-pairs stats, loads and bound checks");
    add_topology_flags(analyze_cmd, copts);
    add_strategy_flags(analyze_cmd, /*strict_default=*/true);
    analyze_cmd->add_option("--format", copts.format, "json | csv | text");
    analyze_cmd->add_option("--sample", sopts.sample,
                            "Monte Carlo pair sample count (0 = exhaustive)");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "side-by-side reports for several strategies");
    add_topology_flags(compare_cmd, copts);
    add_strategy_flags(compare_cmd, /*strict_default=*/true);
    compare_cmd->add_option("--format", copts.format, "json | csv | text");

    CLI::App* export_cmd = app.add_subcommand("export", "write the graph as a file");
    add_topology_flags(export_cmd, copts);
    export_cmd->add_option("--format", copts.format, "edgelist | dot | json");
    export_cmd->add_option("--kinds", export_kinds, "edge kind filter")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(papillon::ExitCode::Usage);
    }

    try {
        if (build_cmd->parsed()) return cmd_build(copts);
        if (route_cmd->parsed()) return cmd_route(copts, sopts, from, to);
        if (analyze_cmd->parsed()) return cmd_analyze(copts, sopts);
        if (compare_cmd->parsed()) return cmd_compare(copts, sopts);
        if (export_cmd->parsed()) return cmd_export(copts, export_kinds);
    } catch (const papillon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(papillon::ExitCode::Invariant);
    }
    return 0;
}
