#include "papillon/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include "papillon/rng.hpp"

namespace papillon {

namespace {

std::uint64_t params_node_count(const TopologyParams& p) {
    switch (p.family) {
        case Family::Clockwise: return upow(p.kappa, p.m) * p.m;
        case Family::Absolute: return upow(2ull * p.k + 1, p.m) * p.m;
        case Family::Xor: return upow(p.lambda, p.m) * p.m;
        default: return upow(2, p.b);
    }
}

bool is_ring_family(Family f) {
    return f == Family::Clockwise || f == Family::Absolute;
}

// Per-source accumulator; folded in source order so results do not depend on
// the worker count.
struct SourceAccum {
    std::map<std::size_t, Rational> hist;
    std::vector<Rational> loads;
    std::size_t worst = 0;
    NodeId worst_t = 0;
    bool has_worst = false;
    std::array<std::size_t, 4> phase_max{};
    std::uint64_t phase_violations = 0;
};

void note_phases(SourceAccum& acc, const Route& r, const std::vector<Phase>* labels) {
    std::array<std::size_t, 4> counts{};
    for (std::size_t i = 0; i < r.hops.size(); ++i) {
        const Phase p = labels ? (*labels)[i] : r.hops[i].phase;
        ++counts[static_cast<std::size_t>(p)];
    }
    for (std::size_t i = 0; i < 4; ++i)
        acc.phase_max[i] = std::max(acc.phase_max[i], counts[i]);
}

void note_route(SourceAccum& acc, const Topology& topo, const EdgeTable& table,
                const Route& r, const Rational& weight, bool count_stats,
                const std::vector<Phase>* labels) {
    if (count_stats) {
        acc.hist[r.length()] += weight;
        if (!acc.has_worst || r.length() > acc.worst) {
            acc.worst = r.length();
            acc.worst_t = r.target;
            acc.has_worst = true;
        }
        note_phases(acc, r, labels);
    }
    for (const Hop& h : r.hops) acc.loads[table.id_of(topo, h.from, h.to)] += weight;
}

void process_pair(const Topology& topo, const StrategyConfig& cfg, const EdgeTable& table,
                  SourceAccum& acc, NodeId s, NodeId t) {
    const bool diagonal = (s == t);
    if (cfg.strategy == Strategy::CongestionFreeRandom) {
        enumerate_random_branches(topo, s, t, cfg.strict_loop,
                                  [&](const Route& r, const Rational& w) {
                                      note_route(acc, topo, table, r, w, !diagonal, nullptr);
                                  });
        return;
    }
    const Route r = route(topo, cfg, s, t);
    if (cfg.strategy == Strategy::Greedy && is_ring_family(topo.params.family)) {
        const PhaseScan scan = scan_phases(r, topo);
        if (!diagonal && (!scan.monotone || !scan.caps_ok)) ++acc.phase_violations;
        note_route(acc, topo, table, r, Rational(1), !diagonal, &scan.labels);
    } else {
        note_route(acc, topo, table, r, Rational(1), !diagonal, nullptr);
    }
}

AllPairsResult fold(const Topology& topo, const EdgeTable& table,
                    std::vector<SourceAccum>& per_source, std::uint64_t stats_pairs,
                    std::uint64_t load_pairs) {
    AllPairsResult out;
    out.stats.pairs = stats_pairs;
    out.loads.pairs = load_pairs;
    out.loads.loads.assign(table.size(), Rational(0));

    for (const SourceAccum& acc : per_source) {
        for (const auto& [len, mass] : acc.hist) out.stats.histogram[len] += mass;
        for (std::size_t i = 0; i < 4; ++i)
            out.stats.per_phase_max[i] =
                std::max(out.stats.per_phase_max[i], acc.phase_max[i]);
        out.stats.phase_violations += acc.phase_violations;
        for (std::size_t e = 0; e < acc.loads.size(); ++e)
            if (acc.loads[e] != 0) out.loads.loads[e] += acc.loads[e];
    }
    // Worst pair: first source (ascending) achieving the maximum.
    for (NodeId s = 0; s < per_source.size(); ++s) {
        const SourceAccum& acc = per_source[s];
        if (acc.has_worst && acc.worst > out.stats.worst) {
            out.stats.worst = acc.worst;
            out.stats.worst_source = s;
            out.stats.worst_target = acc.worst_t;
        }
    }

    Rational mass(0), weighted(0);
    for (const auto& [len, m] : out.stats.histogram) {
        mass += m;
        weighted += m * static_cast<std::int64_t>(len);
    }
    out.stats.total_mass = mass;
    out.stats.mean = mass == 0 ? Rational(0) : Rational(weighted / mass);

    std::vector<bool> eligible(table.size(), true);
    for (std::uint64_t id = 0; id < table.size(); ++id) {
        const auto [u, e] = table.decode(topo, id);
        (void)u;
        if (e->kinds & kBack) {
            eligible[id] = false;
            out.loads.excluded.push_back(id);
        }
        out.loads.total += out.loads.loads[id];
    }
    out.loads.pi = compute_pi(out.loads.loads, eligible, out.loads.pi_note);
    bool first = true;
    for (std::uint64_t id = 0; id < table.size(); ++id) {
        if (!eligible[id]) continue;
        if (first || out.loads.loads[id] < out.loads.min_load)
            out.loads.min_load = out.loads.loads[id];
        if (first || out.loads.loads[id] > out.loads.max_load)
            out.loads.max_load = out.loads.loads[id];
        first = false;
    }
    return out;
}

std::uint64_t branch_bound(const Topology& topo, const StrategyConfig& cfg) {
    if (cfg.strategy != Strategy::CongestionFreeRandom) return 1;
    const std::uint64_t fanout = topo.params.family == Family::Clockwise
                                     ? topo.params.kappa
                                     : 2ull * topo.params.k + 2;
    return upow(fanout, topo.params.m > 0 ? topo.params.m - 1 : 0);
}

} // namespace

bool span_contains(NodeId u, NodeId v, const TopologyParams& params) {
    const std::uint64_t n = params_node_count(params);
    if (u >= n || v >= n) throw ParameterError("span_contains: label out of range");
    const std::uint32_t m = params.m;
    switch (params.family) {
        case Family::Clockwise: {
            const std::uint64_t bound = upow(params.kappa, level_ring(u, m) + 1) * m;
            return delta_clockwise(u, v, n) < bound;
        }
        case Family::Absolute: {
            // D expressible as |c + m*S| with S balanced over level+1 digits
            // iff floor(D/m) <= ((2k+1)^(level+1) - 1) / 2.
            const std::uint64_t cap =
                (upow(2ull * params.k + 1, level_ring(u, m) + 1) - 1) / 2;
            return delta_absolute(u, v, n) / m <= cap;
        }
        default:
            throw ParameterError("span_contains applies to the clockwise and absolute families");
    }
}

PhaseScan scan_phases(const Route& r, const Topology& topo) {
    const Family fam = topo.params.family;
    if (!is_ring_family(fam))
        throw ParameterError("phase classification applies to greedy ring-family routes");
    const std::uint32_t m = topo.params.m;
    const Metric met = default_metric(fam);

    PhaseScan scan;
    scan.labels.reserve(r.hops.size());
    Phase prev = Phase::I;
    for (const Hop& h : r.hops) {
        const Distance d = met == Metric::Clockwise
                               ? delta_clockwise(h.from, r.target, topo.n)
                               : delta_absolute(h.from, r.target, topo.n);
        Phase p;
        if (d < m)
            p = Phase::III;
        else if (span_contains(h.from, r.target, topo.params))
            p = Phase::II;
        else
            p = Phase::I;
        if (p < prev) scan.monotone = false;
        prev = p;
        ++scan.counts[static_cast<std::size_t>(p)];
        scan.labels.push_back(p);
    }
    scan.caps_ok = scan.counts[1] <= m - 1 && scan.counts[2] <= m &&
                   scan.counts[3] <= m - 1;
    return scan;
}

std::vector<Phase> classify_phases(const Route& r, const Topology& topo) {
    PhaseScan scan = scan_phases(r, topo);
    if (!scan.monotone)
        throw InvariantViolation("phase labels regress on route " +
                                 std::to_string(r.source) + "->" +
                                 std::to_string(r.target));
    if (!scan.caps_ok)
        throw InvariantViolation(
            "phase cap exceeded on route " + std::to_string(r.source) + "->" +
            std::to_string(r.target) + ": I=" + std::to_string(scan.counts[1]) +
            " II=" + std::to_string(scan.counts[2]) +
            " III=" + std::to_string(scan.counts[3]) + " caps=" +
            std::to_string(topo.params.m - 1) + "/" + std::to_string(topo.params.m) +
            "/" + std::to_string(topo.params.m - 1));
    return scan.labels;
}

EdgeTable::EdgeTable(const Topology& topo) {
    first.resize(topo.n + 1, 0);
    for (NodeId u = 0; u < topo.n; ++u) first[u + 1] = first[u] + topo.adj[u].size();
}

std::uint64_t EdgeTable::id_of(const Topology& topo, NodeId u, NodeId v) const {
    const auto& edges = topo.adj[u];
    const auto it = std::lower_bound(edges.begin(), edges.end(), v,
                                     [](const Edge& e, NodeId t) { return e.to < t; });
    if (it == edges.end() || it->to != v)
        throw InvariantViolation("edge id lookup for a hop that is not an edge");
    return id(u, static_cast<std::size_t>(it - edges.begin()));
}

std::pair<NodeId, const Edge*> EdgeTable::decode(const Topology& topo, std::uint64_t eid) const {
    const auto it = std::upper_bound(first.begin(), first.end(), eid);
    const NodeId u = static_cast<NodeId>(it - first.begin()) - 1;
    return {u, &topo.adj[u][eid - first[u]]};
}

std::optional<Rational> compute_pi(const std::vector<Rational>& loads,
                                   const std::vector<bool>& eligible, std::string& note) {
    bool any = false;
    Rational lo(0), hi(0);
    for (std::size_t i = 0; i < loads.size(); ++i) {
        if (!eligible[i]) continue;
        if (!any || loads[i] < lo) lo = loads[i];
        if (!any || loads[i] > hi) hi = loads[i];
        any = true;
    }
    if (!any) {
        note = "no eligible edges";
        return std::nullopt;
    }
    if (lo == 0) {
        note = "an eligible edge has zero expected load; pi is undefined";
        return std::nullopt;
    }
    note.clear();
    return Rational(hi / lo);
}

AllPairsResult analyze_all_pairs(const Topology& topo, const StrategyConfig& cfg,
                                 unsigned workers, std::uint64_t budget) {
    validate_config(topo, cfg);
    const std::uint64_t n = topo.n;
    const std::uint64_t hops_per_route = 4ull * std::max<std::uint32_t>(
        topo.params.m, topo.params.b);
    const std::uint64_t estimated = n * n * branch_bound(topo, cfg) * hops_per_route;
    if (estimated > budget) {
        const std::uint64_t suggestion = std::min<std::uint64_t>(n * n, 1'000'000);
        throw ParameterError(
            "all-pairs analysis would take about " + std::to_string(estimated) +
            " route events (budget " + std::to_string(budget) +
            "); rerun with --sample " + std::to_string(suggestion) +
            " --seed " + std::to_string(cfg.seed) + " for a Monte Carlo estimate");
    }

    const EdgeTable table(topo);
    std::vector<SourceAccum> per_source(n);
    for (auto& acc : per_source) acc.loads.assign(table.size(), Rational(0));

    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t s = next.fetch_add(1);
            if (s >= n) break;
            for (NodeId t = 0; t < n; ++t)
                process_pair(topo, cfg, table, per_source[s], s, t);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return fold(topo, table, per_source, n * (n - 1), n * n);
}

StatsSummary all_pairs_stats(const Topology& topo, const StrategyConfig& cfg,
                             unsigned workers) {
    return analyze_all_pairs(topo, cfg, workers).stats;
}

LoadProfile edge_load_profile(const Topology& topo, const StrategyConfig& cfg,
                              unsigned workers) {
    return analyze_all_pairs(topo, cfg, workers).loads;
}

AllPairsResult sampled_analysis(const Topology& topo, const StrategyConfig& cfg,
                                std::uint64_t samples) {
    validate_config(topo, cfg);
    if (samples == 0) throw ParameterError("sample count must be positive");
    const EdgeTable table(topo);
    std::vector<SourceAccum> acc(1);
    acc[0].loads.assign(table.size(), Rational(0));

    Rng draws(mix64(cfg.seed ^ 0xa5a5a5a5a5a5a5a5ull));
    for (std::uint64_t i = 0; i < samples; ++i) {
        NodeId s = draws.below(topo.n), t = draws.below(topo.n);
        while (s == t) {
            s = draws.below(topo.n);
            t = draws.below(topo.n);
        }
        StrategyConfig per_draw = cfg;
        per_draw.seed = mix64(cfg.seed ^ i); // fresh stream per draw
        const Route r = route(topo, per_draw, s, t);
        note_route(acc[0], topo, table, r, Rational(1), true, nullptr);
    }
    AllPairsResult out = fold(topo, table, acc, samples, samples);
    out.stats.sampled = out.loads.sampled = true;
    out.stats.sample_count = out.loads.sample_count = samples;
    return out;
}

std::vector<std::uint64_t> bfs_shortest_paths(const Topology& topo, NodeId s) {
    if (s >= topo.n) throw ParameterError("bfs: source label out of range");
    std::vector<std::uint64_t> dist(topo.n, UINT64_MAX);
    std::deque<NodeId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (const Edge& e : topo.adj[u]) {
            if (dist[e.to] == UINT64_MAX) {
                dist[e.to] = dist[u] + 1;
                queue.push_back(e.to);
            }
        }
    }
    return dist;
}

std::vector<BoundCheck> theorem_checks(const Topology& topo, const StrategyConfig& cfg,
                                       const StatsSummary& stats, const LoadProfile* loads) {
    std::vector<BoundCheck> checks;
    const Family fam = topo.params.family;
    const std::uint32_t m = topo.params.m;
    const bool sampled = stats.sampled;

    auto add = [&](const std::string& name, bool pass, const std::string& detail,
                   bool report_only = false) {
        checks.push_back(BoundCheck{name, detail, pass, report_only || sampled});
    };
    auto mean_str = [&]() { return rational_str(stats.mean); };

    switch (cfg.strategy) {
        case Strategy::Greedy:
            if (is_ring_family(fam)) {
                const std::size_t cap = 3ull * m - 2;
                add("greedy-worst", stats.worst <= cap,
                    "worst=" + std::to_string(stats.worst) + " bound=" + std::to_string(cap));
                add("greedy-mean", stats.mean < Rational(2ull * m - 1),
                    "mean=" + mean_str() + " bound<" + std::to_string(2ull * m - 1));
                add("greedy-phase-structure", stats.phase_violations == 0,
                    std::to_string(stats.phase_violations) + " of " +
                        std::to_string(stats.pairs) +
                        " routes break the phase caps or monotonicity");
            } else if (fam == Family::Xor) {
                const std::size_t cap = 2ull * m - 1;
                add("xor-greedy-worst", stats.worst <= cap,
                    "worst=" + std::to_string(stats.worst) + " bound=" + std::to_string(cap));
                add("xor-greedy-mean", stats.mean * 2 <= Rational(3ull * m),
                    "mean=" + mean_str() + " bound<=" + std::to_string(m) + "*1.5");
            } else if (fam == Family::ChordBidirectional) {
                const std::size_t expect = topo.params.b / 2;
                add("chord-bidirectional-worst", stats.worst == expect,
                    "worst=" + std::to_string(stats.worst) + " expected=" +
                        std::to_string(expect));
            }
            break;
        case Strategy::Hypercubic: {
            const std::size_t cap = 2ull * m - 1;
            add("hypercubic-worst", stats.worst <= cap,
                "worst=" + std::to_string(stats.worst) + " bound=" + std::to_string(cap));
            add("hypercubic-mean", stats.mean * 2 <= Rational(3ull * m),
                "mean=" + mean_str() + " bound<=" + std::to_string(m) + "*1.5");
            break;
        }
        case Strategy::CongestionFreeRandom:
        case Strategy::CongestionFreeDeterministic: {
            const std::size_t cap = 2ull * m - 1;
            const std::string prefix = cfg.strategy == Strategy::CongestionFreeRandom
                                           ? "congestion-free-"
                                           : "congestion-free-deterministic-";
            add(prefix + "worst", stats.worst <= cap,
                "worst=" + std::to_string(stats.worst) + " bound=" + std::to_string(cap));
            if (cfg.strict_loop) {
                add(prefix + "mean", stats.mean * 2 <= Rational(3ull * m),
                    "mean=" + mean_str() + " bound<=" + std::to_string(m) + "*1.5");
            }
            break;
        }
    }

    if (loads) {
        // The hypercubic strategies never traverse a pure back edge; the
        // merged level-0 edges are their i = -1 long links.
        if (fam == Family::Absolute && cfg.strategy != Strategy::Greedy) {
            const EdgeTable table(topo);
            bool clean = true;
            for (std::uint64_t id = 0; id < table.size(); ++id) {
                const auto [u, e] = table.decode(topo, id);
                (void)u;
                if (e->kinds == kBack && loads->loads[id] != 0) clean = false;
            }
            add("no-pure-back-usage", clean, clean ? "all pure back edges unused"
                                                   : "a pure back edge carried load");
        }
        if (cfg.strategy == Strategy::CongestionFreeRandom && cfg.strict_loop) {
            const bool unit = loads->pi && *loads->pi == 1;
            add("congestion-pi", unit,
                loads->pi ? "pi=" + rational_str(*loads->pi) + " expected=1"
                          : "pi undefined: " + loads->pi_note);
        }
        if (cfg.strategy == Strategy::CongestionFreeDeterministic && cfg.strict_loop) {
            // Measured only: the split-pair listing does not balance link
            // usage for small k, so equality with 1 is not asserted.
            const bool unit = loads->pi && *loads->pi == 1;
            add("congestion-pi-measured", unit,
                loads->pi ? "pi=" + rational_str(*loads->pi) + " compared against 1"
                          : "pi undefined: " + loads->pi_note,
                true);
        }
    }
    return checks;
}

WitnessScan greedy_vs_bfs(const Topology& topo) {
    WitnessScan scan;
    StrategyConfig greedy;
    greedy.strategy = Strategy::Greedy;
    for (NodeId s = 0; s < topo.n; ++s) {
        const auto dist = bfs_shortest_paths(topo, s);
        for (NodeId t = 0; t < topo.n; ++t) {
            if (s == t) continue;
            if (dist[t] == UINT64_MAX)
                throw InvariantViolation("unreachable node " + std::to_string(t) +
                                         " from " + std::to_string(s));
            const Route r = route(topo, greedy, s, t);
            if (r.length() > dist[t]) {
                ++scan.count;
                if (!scan.witness)
                    scan.witness = GreedyBfsWitness{s, t, r.length(), dist[t]};
            }
        }
    }
    return scan;
}

CompareResult compare_strategies(const Topology& topo,
                                 const std::vector<StrategyConfig>& configs,
                                 unsigned workers) {
    CompareResult out;
    for (const StrategyConfig& cfg : configs) {
        AllPairsResult r = analyze_all_pairs(topo, cfg, workers);
        StrategyReport rep;
        rep.config = cfg;
        rep.checks = theorem_checks(topo, cfg, r.stats, &r.loads);
        rep.stats = std::move(r.stats);
        rep.loads = std::move(r.loads);
        out.strategies.push_back(std::move(rep));
    }
    out.greedy_bfs = greedy_vs_bfs(topo);
    return out;
}

} // namespace papillon
