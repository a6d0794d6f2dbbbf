#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "papillon/rational.hpp"
#include "papillon/topology.hpp"

namespace papillon {

enum class Metric { Clockwise, Absolute, Xor };
enum class Strategy { Greedy, Hypercubic, CongestionFreeRandom, CongestionFreeDeterministic };

// Phase of a hop. Greedy routes on the ring families are classified after the
// fact (see analysis); the constructed strategies label hops as they go.
enum class Phase : std::uint8_t { None = 0, I, II, III };

std::string metric_name(Metric m);
std::optional<Metric> metric_from_name(const std::string& name);
std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);
std::string phase_name(Phase p);

// The metric each family is built for.
Metric default_metric(Family f);

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct StrategyConfig {
    Strategy strategy = Strategy::Greedy;
    std::optional<Metric> metric; // defaults to the family's metric
    bool strict_loop = true;      // full phase-II loop when phase I lands on t
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t max_hops = 0;   // 0 = family default (4m, or 4b for chord)
};

struct Hop {
    NodeId from = 0;
    NodeId to = 0;
    std::uint8_t kinds = 0;  // kind bits of the traversed stored edge
    Distance remaining = 0;  // metric distance from `to` to the target
    Phase phase = Phase::None;
};

struct Route {
    NodeId source = 0;
    NodeId target = 0;
    std::vector<Hop> hops;

    std::size_t length() const { return hops.size(); }
};

struct DigitDecomposition {
    std::uint32_t c = 0;               // short-hop component, 0 <= c < m
    std::vector<std::int64_t> digits;  // digit i covers radix^i
    std::uint64_t radix = 0;
    bool balanced = false;             // digits in [-k,+k] rather than [0,radix)

    // c + m + m * sum(digits[i] * radix^i); equals the decomposed distance
    // exactly for the clockwise form and modulo n for the balanced form.
    std::int64_t travel(std::uint32_t m) const;
};

// dist = c + m + m * sum kappa^i d_i with 0 <= c < m, 0 <= d_i < kappa.
// Requires m <= dist <= n + m - 1; distances below m are short-link-only.
DigitDecomposition decompose_clockwise(Distance dist, std::uint32_t kappa, std::uint32_t m);

// Balanced digits of a level-aligned clockwise distance D (D = 0 mod m):
// D = m + m * sum (2k+1)^i d_i (mod n) with -k <= d_i <= +k, uniquely.
DigitDecomposition decompose_balanced_absolute(Distance D, std::uint32_t k, std::uint32_t m);

std::uint64_t effective_max_hops(const Topology& topo, const StrategyConfig& cfg);

// Checks the family/strategy/metric combination and throws ParameterError on
// an unsupported one.
void validate_config(const Topology& topo, const StrategyConfig& cfg);

// Forward to the neighbor minimizing the metric distance to t; ties go to the
// smallest node label. max_hops = 0 uses the family default.
Route greedy_route(const Topology& topo, Metric metric, NodeId s, NodeId t,
                   std::uint64_t max_hops = 0);

Route hypercubic_clockwise(const Topology& topo, NodeId s, NodeId t);
Route hypercubic_absolute(const Topology& topo, NodeId s, NodeId t);

Route congestion_free_clockwise(const Topology& topo, NodeId s, NodeId t,
                                bool strict_loop, std::uint64_t seed);
Route congestion_free_absolute_random(const Topology& topo, NodeId s, NodeId t,
                                      bool strict_loop, std::uint64_t seed);
Route congestion_free_absolute_deterministic(const Topology& topo, NodeId s, NodeId t,
                                             bool strict_loop);

// Dispatch on cfg.strategy after validate_config.
Route route(const Topology& topo, const StrategyConfig& cfg, NodeId s, NodeId t);

// Exact enumeration of every phase-I branch of the randomized strategies,
// with its probability. Weights over all visits sum to one. In the absolute
// family each conceptual out-link has weight 1/(2k+2); the merged level-0
// edge is drawn with weight 2/(2k+2).
void enumerate_random_branches(const Topology& topo, NodeId s, NodeId t, bool strict_loop,
                               const std::function<void(const Route&, const Rational&)>& visit);

} // namespace papillon
