#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "papillon/routing.hpp"

namespace papillon {

// Closed-form membership test for the greedy phase boundary set of node u.
// Clockwise: delta_clockwise(u, v) < m * kappa^(level+1).
// Absolute: delta_absolute(u, v) expressible as |c + m * sum_{i<=level} (2k+1)^i d_i|.
bool span_contains(NodeId u, NodeId v, const TopologyParams& params);

// Phase labels of one greedy ring-family route plus whether the sequence is
// monotone I -> II -> III and within the per-phase caps (m-1 / m / m-1).
// The clockwise family always satisfies both. The absolute family does not:
// greedy minimization of the folded metric can jump past the digit-aligned
// corridor (first counterexample: k=1, m=3, pair 8->27), so callers that
// tabulate routes use this scan and report violations instead of aborting.
struct PhaseScan {
    std::vector<Phase> labels;
    std::array<std::size_t, 4> counts{}; // indexed by Phase
    bool monotone = true;
    bool caps_ok = true;
};
PhaseScan scan_phases(const Route& route, const Topology& topo);

// Strict variant: labels each hop as above and throws InvariantViolation if
// labels regress or a per-phase cap is exceeded.
std::vector<Phase> classify_phases(const Route& route, const Topology& topo);

struct StatsSummary {
    std::size_t worst = 0;
    NodeId worst_source = 0;
    NodeId worst_target = 0;
    Rational mean;
    Rational total_mass;                       // sum of histogram masses
    std::map<std::size_t, Rational> histogram; // hop count -> pair mass
    std::array<std::size_t, 4> per_phase_max{}; // indexed by Phase
    std::uint64_t phase_violations = 0; // greedy routes breaking caps/monotonicity
    std::uint64_t pairs = 0;                   // ordered pairs, s != t
    bool sampled = false;
    std::uint64_t sample_count = 0;
};

// Stable edge numbering: edges of node 0 first, in adjacency order.
struct EdgeTable {
    explicit EdgeTable(const Topology& topo);
    std::uint64_t id(NodeId u, std::size_t adj_index) const { return first[u] + adj_index; }
    std::uint64_t size() const { return first.back(); }
    // Index of (u -> v) in adj[u]; throws if absent.
    std::uint64_t id_of(const Topology& topo, NodeId u, NodeId v) const;
    std::pair<NodeId, const Edge*> decode(const Topology& topo, std::uint64_t id) const;

    std::vector<std::uint64_t> first; // size n+1, prefix sums
};

struct LoadProfile {
    std::vector<Rational> loads; // by EdgeTable id; expected traversals
    std::vector<std::uint64_t> excluded; // back-tagged edge ids, left out of pi
    std::optional<Rational> pi;  // max/min over eligible edges
    std::string pi_note;         // set when pi is undefined
    Rational min_load, max_load; // over eligible edges
    Rational total;              // all edges, including excluded ones
    std::uint64_t pairs = 0;     // ordered pairs accounted, diagonal included
    bool sampled = false;
    std::uint64_t sample_count = 0;
};

struct AllPairsResult {
    StatsSummary stats;
    LoadProfile loads;
};

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

// Exhaustive all-pairs analysis. The hop histogram covers ordered pairs with
// s != t; edge loads additionally account the diagonal, which contributes
// full loops under the strict congestion-free strategies and nothing
// otherwise. Randomized strategies are branch-enumerated with exact weights.
// Work is split by source node across `workers`; results are identical for
// any worker count. Throws ParameterError when the estimated work exceeds
// `budget`, suggesting the sampling fallback.
AllPairsResult analyze_all_pairs(const Topology& topo, const StrategyConfig& cfg,
                                 unsigned workers = 1,
                                 std::uint64_t budget = kDefaultBudget);

StatsSummary all_pairs_stats(const Topology& topo, const StrategyConfig& cfg,
                             unsigned workers = 1);
LoadProfile edge_load_profile(const Topology& topo, const StrategyConfig& cfg,
                              unsigned workers = 1);

// Monte Carlo fallback: `samples` ordered pairs drawn from the seed stream.
AllPairsResult sampled_analysis(const Topology& topo, const StrategyConfig& cfg,
                                std::uint64_t samples);

// Unweighted shortest hop counts from s; UINT64_MAX marks unreachable nodes.
std::vector<std::uint64_t> bfs_shortest_paths(const Topology& topo, NodeId s);

// pi = max/min over eligible (non-back) edges; nullopt with a note when an
// eligible edge has zero load.
std::optional<Rational> compute_pi(const std::vector<Rational>& loads,
                                   const std::vector<bool>& eligible,
                                   std::string& note);

struct BoundCheck {
    std::string name;
    std::string detail;
    bool pass = false;
    bool report_only = false; // measured quantities that are not asserted
};

// The bound checks that apply to this family/strategy combination.
std::vector<BoundCheck> theorem_checks(const Topology& topo, const StrategyConfig& cfg,
                                       const StatsSummary& stats, const LoadProfile* loads);

struct GreedyBfsWitness {
    NodeId s = 0, t = 0;
    std::size_t greedy_len = 0;
    std::uint64_t bfs_len = 0;
};

// First ordered pair (ascending s, then t) whose greedy route is strictly
// longer than the BFS distance, plus the total count of such pairs.
struct WitnessScan {
    std::optional<GreedyBfsWitness> witness;
    std::uint64_t count = 0;
};
WitnessScan greedy_vs_bfs(const Topology& topo);

struct StrategyReport {
    StrategyConfig config;
    StatsSummary stats;
    LoadProfile loads;
    std::vector<BoundCheck> checks;
};

struct CompareResult {
    std::vector<StrategyReport> strategies;
    WitnessScan greedy_bfs;
};

CompareResult compare_strategies(const Topology& topo,
                                 const std::vector<StrategyConfig>& configs,
                                 unsigned workers = 1);

} // namespace papillon
