#include "papillon/topology.hpp"

#include <algorithm>
#include <bit>

namespace papillon {

namespace {

NodeId wrap(std::int64_t x, std::uint64_t n) {
    std::int64_t r = x % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    return static_cast<NodeId>(r);
}

std::uint64_t checked_node_count(std::uint64_t n, std::uint64_t max_nodes,
                                 const std::string& what) {
    if (n == 0 || n > max_nodes)
        throw SizeError(what + ": node count " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(max_nodes));
    return n;
}

// Append an edge, merging kind bits when the target is already present.
// Self loops are dropped and flagged.
struct EdgeCollector {
    std::vector<Edge>& out;
    NodeId u;
    bool dropped_self = false;

    void add(NodeId v, std::uint8_t kind, std::int64_t annotation) {
        if (v == u) {
            dropped_self = true;
            return;
        }
        for (Edge& e : out) {
            if (e.to == v) {
                e.kinds |= kind;
                return;
            }
        }
        out.push_back(Edge{v, kind, annotation});
    }

    void finish() {
        std::sort(out.begin(), out.end(),
                  [](const Edge& a, const Edge& b) { return a.to < b.to; });
    }
};

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Clockwise: return "clockwise";
        case Family::Absolute: return "absolute";
        case Family::Xor: return "xor";
        case Family::ChordClockwise: return "chord-clockwise";
        case Family::ChordBidirectional: return "chord-bidirectional";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "clockwise") return Family::Clockwise;
    if (name == "absolute") return Family::Absolute;
    if (name == "xor") return Family::Xor;
    if (name == "chord-clockwise") return Family::ChordClockwise;
    if (name == "chord-bidirectional" || name == "chord") return Family::ChordBidirectional;
    return std::nullopt;
}

std::string kind_string(std::uint8_t kinds) {
    std::string s;
    auto append = [&](const char* tag) {
        if (!s.empty()) s += '+';
        s += tag;
    };
    if (kinds & kShort) append("short");
    if (kinds & kLong) append("long");
    if (kinds & kBack) append("back");
    if (kinds & kFinger) append("finger");
    if (s.empty()) s = "none";
    return s;
}

std::uint64_t upow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    while (exp--) {
        if (base != 0 && r > (1ull << 62) / base)
            throw SizeError("power overflow computing topology size");
        r *= base;
    }
    return r;
}

std::uint32_t level_ring(NodeId u, std::uint32_t m) {
    if (m == 0) throw ParameterError("level_ring: m must be >= 1");
    return (m - 1) - static_cast<std::uint32_t>(u % m);
}

std::uint32_t level_xor(NodeId u, std::uint32_t lambda, std::uint32_t m) {
    if (m == 0) throw ParameterError("level_xor: m must be >= 1");
    return static_cast<std::uint32_t>(u / upow(lambda, m));
}

std::uint32_t Topology::level(NodeId u) const {
    if (u >= n) throw ParameterError("level: node label out of range");
    switch (params.family) {
        case Family::Clockwise:
        case Family::Absolute:
            return level_ring(u, params.m);
        case Family::Xor:
            return level_xor(u, params.lambda, params.m);
        default:
            throw ParameterError("level: chord baselines have no levels");
    }
}

std::uint64_t Topology::radix() const {
    switch (params.family) {
        case Family::Clockwise: return params.kappa;
        case Family::Absolute: return 2ull * params.k + 1;
        case Family::Xor: return params.lambda;
        default:
            throw ParameterError("radix: chord baselines have no digit radix");
    }
}

const Edge* Topology::find_edge(NodeId u, NodeId v) const {
    if (u >= n) return nullptr;
    const auto& edges = adj[u];
    auto it = std::lower_bound(edges.begin(), edges.end(), v,
                               [](const Edge& e, NodeId target) { return e.to < target; });
    if (it != edges.end() && it->to == v) return &*it;
    return nullptr;
}

std::uint64_t Topology::edge_count() const {
    std::uint64_t c = 0;
    for (const auto& edges : adj) c += edges.size();
    return c;
}

std::map<std::size_t, std::uint64_t> Topology::degree_histogram() const {
    std::map<std::size_t, std::uint64_t> h;
    for (const auto& edges : adj) ++h[edges.size()];
    return h;
}

Topology build_clockwise(std::uint32_t kappa, std::uint32_t m, std::uint64_t max_nodes) {
    if (kappa < 2) throw ParameterError("clockwise family: kappa must be >= 2");
    if (m < 1) throw ParameterError("clockwise family: m must be >= 1");
    const std::uint64_t n =
        checked_node_count(upow(kappa, m) * m, max_nodes, "clockwise family");

    Topology topo;
    topo.params.family = Family::Clockwise;
    topo.params.kappa = kappa;
    topo.params.m = m;
    topo.params.max_nodes = max_nodes;
    topo.n = n;
    topo.adj.resize(n);

    bool dropped = false;
    for (NodeId u = 0; u < n; ++u) {
        EdgeCollector col{topo.adj[u], u};
        const std::uint64_t step = upow(kappa, level_ring(u, m)) * m;
        for (std::uint32_t i = 0; i < kappa; ++i) {
            const std::int64_t off = 1 + static_cast<std::int64_t>(i * step);
            col.add(wrap(static_cast<std::int64_t>(u) + off, n),
                    off == 1 ? kShort : kLong, off);
        }
        col.finish();
        dropped |= col.dropped_self;
    }
    if (dropped)
        topo.warnings.push_back("self-loop offsets dropped (m=1 degeneracy)");
    return topo;
}

Topology build_absolute(std::uint32_t k, std::uint32_t m, std::uint64_t max_nodes) {
    if (k < 1) throw ParameterError("absolute family: k must be >= 1");
    if (m < 1) throw ParameterError("absolute family: m must be >= 1");
    const std::uint64_t radix = 2ull * k + 1;
    const std::uint64_t n =
        checked_node_count(upow(radix, m) * m, max_nodes, "absolute family");

    Topology topo;
    topo.params.family = Family::Absolute;
    topo.params.k = k;
    topo.params.m = m;
    topo.params.max_nodes = max_nodes;
    topo.n = n;
    topo.adj.resize(n);

    bool dropped = false;
    for (NodeId u = 0; u < n; ++u) {
        EdgeCollector col{topo.adj[u], u};
        const std::int64_t step =
            static_cast<std::int64_t>(upow(radix, level_ring(u, m)) * m);
        for (std::int64_t i = -static_cast<std::int64_t>(k);
             i <= static_cast<std::int64_t>(k); ++i) {
            const std::int64_t off = 1 + i * step;
            col.add(wrap(static_cast<std::int64_t>(u) + off, n),
                    off == 1 ? kShort : kLong, off);
        }
        // Back edge; at level 0 it lands on the i = -1 long link and the
        // collector merges the kind bits.
        const std::int64_t back = 1 - static_cast<std::int64_t>(m);
        col.add(wrap(static_cast<std::int64_t>(u) + back, n), kBack, back);
        col.finish();
        dropped |= col.dropped_self;
    }
    if (dropped)
        topo.warnings.push_back("self-loop offsets dropped (m=1 degeneracy)");
    return topo;
}

Topology build_xor(std::uint32_t lambda, std::uint32_t m, std::uint64_t max_nodes) {
    if (lambda < 2 || !std::has_single_bit(lambda))
        throw ParameterError("xor family: lambda must be a power of two >= 2");
    if (m < 1) throw ParameterError("xor family: m must be >= 1");
    const std::uint64_t base = upow(lambda, m);
    const std::uint64_t n = checked_node_count(base * m, max_nodes, "xor family");

    Topology topo;
    topo.params.family = Family::Xor;
    topo.params.lambda = lambda;
    topo.params.m = m;
    topo.params.max_nodes = max_nodes;
    topo.n = n;
    topo.adj.resize(n);

    bool dropped = false;
    for (NodeId u = 0; u < n; ++u) {
        EdgeCollector col{topo.adj[u], u};
        const std::uint32_t lvl = static_cast<std::uint32_t>(u / base);
        const std::uint64_t y = u % base;
        const std::uint64_t place = upow(lambda, lvl);
        const std::uint64_t stem = y - ((y / place) % lambda) * place;
        const std::uint64_t next_prefix = ((lvl + 1) % m) * base;
        for (std::uint64_t digit = 0; digit < lambda; ++digit) {
            const NodeId v = next_prefix + stem + digit * place;
            col.add(v, kLong, static_cast<std::int64_t>(digit));
        }
        col.finish();
        dropped |= col.dropped_self;
    }
    if (dropped)
        topo.warnings.push_back("self-image links dropped (m=1 degeneracy)");
    return topo;
}

Topology build_chord(std::uint32_t b, bool bidirectional, std::uint64_t max_nodes) {
    if (b < 2) throw ParameterError("chord baseline: b must be >= 2");
    const std::uint64_t n = checked_node_count(upow(2, b), max_nodes, "chord baseline");

    Topology topo;
    topo.params.family =
        bidirectional ? Family::ChordBidirectional : Family::ChordClockwise;
    topo.params.b = b;
    topo.params.max_nodes = max_nodes;
    topo.n = n;
    topo.adj.resize(n);

    for (NodeId u = 0; u < n; ++u) {
        EdgeCollector col{topo.adj[u], u};
        for (std::uint32_t i = 0; i < b; ++i) {
            const std::int64_t off = static_cast<std::int64_t>(1ull << i);
            col.add(wrap(static_cast<std::int64_t>(u) + off, n),
                    static_cast<std::uint8_t>(kFinger | (off == 1 ? kShort : 0)), off);
        }
        if (bidirectional) {
            for (std::uint32_t i = 0; i < b; ++i) {
                const std::int64_t off = -static_cast<std::int64_t>(1ull << i);
                // +2^(b-1) and -2^(b-1) land on the same node; the collector
                // keeps one edge, so out-degree is 2b-1.
                col.add(wrap(static_cast<std::int64_t>(u) + off, n), kFinger, off);
            }
        }
        col.finish();
    }
    return topo;
}

Topology build(const TopologyParams& params) {
    switch (params.family) {
        case Family::Clockwise:
            return build_clockwise(params.kappa, params.m, params.max_nodes);
        case Family::Absolute:
            return build_absolute(params.k, params.m, params.max_nodes);
        case Family::Xor:
            return build_xor(params.lambda, params.m, params.max_nodes);
        case Family::ChordClockwise:
            return build_chord(params.b, false, params.max_nodes);
        case Family::ChordBidirectional:
            return build_chord(params.b, true, params.max_nodes);
    }
    throw ParameterError("unknown family");
}

} // namespace papillon
