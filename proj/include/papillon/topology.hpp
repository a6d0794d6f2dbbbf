#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "papillon/ring_metrics.hpp"

namespace papillon {

enum class Family {
    Clockwise,         // butterfly on a ring, clockwise metric
    Absolute,          // butterfly on a ring, absolute metric, balanced digits
    Xor,               // butterfly keyed by the xor metric
    ChordClockwise,    // baseline: power-of-two fingers, one direction
    ChordBidirectional // baseline: fingers in both directions
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Edge kind bits. A stored edge may carry several: in the absolute family the
// level-0 back edge coincides with the i = -1 long link and is stored once
// with both bits set.
enum EdgeKindBits : std::uint8_t {
    kShort = 1,  // ring offset exactly +1
    kLong = 2,   // digit-covering link
    kBack = 4,   // offset 1-m (absolute family)
    kFinger = 8, // chord finger
};

// Canonical display string, e.g. "short", "long+back", "short+finger".
std::string kind_string(std::uint8_t kinds);

struct TopologyParams {
    Family family = Family::Clockwise;
    std::uint32_t kappa = 0;  // clockwise: links per node, >= 2
    std::uint32_t k = 0;      // absolute: balanced digit bound, >= 1
    std::uint32_t lambda = 0; // xor: radix, power of two >= 2
    std::uint32_t m = 0;      // levels (all butterfly families)
    std::uint32_t b = 0;      // chord: n = 2^b
    std::uint64_t max_nodes = 1'000'000;
};

struct Edge {
    NodeId to = 0;
    std::uint8_t kinds = 0;
    // Signed ring offset for the ring and chord families; the replacement
    // digit for the xor family.
    std::int64_t annotation = 0;
};

struct Topology {
    TopologyParams params;
    std::uint64_t n = 0;
    // Per node, sorted by target label, no self loops, no duplicate targets.
    std::vector<std::vector<Edge>> adj;
    std::vector<std::string> warnings;

    // Butterfly level of a node; parameter error for the chord baselines.
    std::uint32_t level(NodeId u) const;
    // kappa, 2k+1 or lambda; parameter error for the chord baselines.
    std::uint64_t radix() const;

    const Edge* find_edge(NodeId u, NodeId v) const;
    std::uint64_t edge_count() const;
    std::map<std::size_t, std::uint64_t> degree_histogram() const;
};

// Level of a ring-family node: (m-1) - (u mod m).
std::uint32_t level_ring(NodeId u, std::uint32_t m);
// Level of an xor-family node: the label's high prefix, floor(u / lambda^m).
std::uint32_t level_xor(NodeId u, std::uint32_t lambda, std::uint32_t m);

Topology build_clockwise(std::uint32_t kappa, std::uint32_t m,
                         std::uint64_t max_nodes = 1'000'000);
Topology build_absolute(std::uint32_t k, std::uint32_t m,
                        std::uint64_t max_nodes = 1'000'000);
Topology build_xor(std::uint32_t lambda, std::uint32_t m,
                   std::uint64_t max_nodes = 1'000'000);
Topology build_chord(std::uint32_t b, bool bidirectional,
                     std::uint64_t max_nodes = 1'000'000);

// Dispatch on params.family, validating the relevant fields.
Topology build(const TopologyParams& params);

// base^exp with an overflow guard; sizes are capped well below 2^63.
std::uint64_t upow(std::uint64_t base, std::uint32_t exp);

} // namespace papillon
