#include "papillon/routing.hpp"

#include <algorithm>

#include "papillon/rng.hpp"

namespace papillon {

namespace {

NodeId wrap(std::int64_t x, std::uint64_t n) {
    std::int64_t r = x % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    return static_cast<NodeId>(r);
}

Distance metric_distance(Metric met, NodeId a, NodeId t, std::uint64_t n) {
    switch (met) {
        case Metric::Clockwise: return delta_clockwise(a, t, n);
        case Metric::Absolute: return delta_absolute(a, t, n);
        case Metric::Xor: return delta_xor(a, t);
    }
    throw ParameterError("unknown metric");
}

void check_labels(const Topology& topo, NodeId s, NodeId t) {
    if (s >= topo.n || t >= topo.n)
        throw ParameterError("node label out of range for n=" + std::to_string(topo.n));
}

void push_hop(Route& r, const Topology& topo, Metric met, NodeId u, NodeId v, Phase phase) {
    const Edge* e = topo.find_edge(u, v);
    if (!e)
        throw InvariantViolation("required edge " + std::to_string(u) + "->" +
                                 std::to_string(v) + " is not in the topology");
    r.hops.push_back(Hop{u, v, e->kinds, metric_distance(met, v, r.target, topo.n), phase});
}

// Phase II of the constructed strategies: m hops, the hop at node u covers
// 1 + digits[level(u)] * radix^level(u) * m ring positions.
NodeId run_digit_phase(Route& r, const Topology& topo, Metric met, NodeId u,
                       const std::vector<std::int64_t>& digits, std::uint64_t radix) {
    const std::uint32_t m = topo.params.m;
    for (std::uint32_t step = 0; step < m; ++step) {
        const std::uint32_t lvl = topo.level(u);
        const std::int64_t off =
            1 + digits[lvl] * static_cast<std::int64_t>(upow(radix, lvl)) *
                    static_cast<std::int64_t>(m);
        const NodeId v = wrap(static_cast<std::int64_t>(u) + off, topo.n);
        push_hop(r, topo, met, u, v, Phase::II);
        u = v;
    }
    return u;
}

// Level gap (t - s) mod m: the number of phase-I hops.
std::uint32_t level_gap(NodeId s, NodeId t, std::uint32_t m) {
    return static_cast<std::uint32_t>(((t % m) + m - (s % m)) % m);
}

void require_family(const Topology& topo, Family f, const char* what) {
    if (topo.params.family != f)
        throw ParameterError(std::string(what) + " requires the " +
                             family_name(f) + " family");
}

std::uint32_t deterministic_split(std::uint32_t k, std::int64_t a) {
    // a' = floor((k + a) / 2); a'' = a - a' = -floor((k - a) / 2).
    return static_cast<std::uint32_t>((static_cast<std::int64_t>(k) + a) / 2);
}

// Whether t is coverable from v by the digit machinery available at level(v)
// and below: delta_clockwise(v, t) = c + m * sum_{i<=level} radix^i d_i
// (mod n) with c in [0, m) and digits in the family's range. Greedy breaks
// metric ties toward covering neighbors; under label-order ties alone the
// absolute family exceeds its 3m-2 worst case (first case: k=1, m=2, pair
// 9->16, 5 hops through the non-covering side of a tie).
bool covers_target(const Topology& topo, NodeId v, NodeId t) {
    const std::uint32_t m = topo.params.m;
    const Distance D = delta_clockwise(v, t, topo.n);
    const std::uint32_t lvl = topo.level(v);
    if (topo.params.family == Family::Clockwise)
        return D < upow(topo.params.kappa, lvl + 1) * m;
    // Balanced digits at positions 0..level represent exactly
    // [-(R^(level+1)-1)/2, +(R^(level+1)-1)/2]; check the centered residue.
    const std::int64_t radix = static_cast<std::int64_t>(topo.radix());
    const std::int64_t modulus = static_cast<std::int64_t>(upow(radix, m));
    const std::int64_t q = static_cast<std::int64_t>((D - D % m) / m) % modulus;
    const std::int64_t centered = q > (modulus - 1) / 2 ? q - modulus : q;
    const std::int64_t reach = (static_cast<std::int64_t>(upow(radix, lvl + 1)) - 1) / 2;
    return centered >= -reach && centered <= reach;
}

} // namespace

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::Clockwise: return "clockwise";
        case Metric::Absolute: return "absolute";
        case Metric::Xor: return "xor";
    }
    return "?";
}

std::optional<Metric> metric_from_name(const std::string& name) {
    if (name == "clockwise") return Metric::Clockwise;
    if (name == "absolute") return Metric::Absolute;
    if (name == "xor") return Metric::Xor;
    return std::nullopt;
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Greedy: return "greedy";
        case Strategy::Hypercubic: return "hypercubic";
        case Strategy::CongestionFreeRandom: return "congestion-free-random";
        case Strategy::CongestionFreeDeterministic: return "congestion-free-deterministic";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
    if (name == "greedy") return Strategy::Greedy;
    if (name == "hypercubic") return Strategy::Hypercubic;
    if (name == "congestion-free-random" || name == "cf-random")
        return Strategy::CongestionFreeRandom;
    if (name == "congestion-free-deterministic" || name == "cf-deterministic")
        return Strategy::CongestionFreeDeterministic;
    return std::nullopt;
}

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::None: return "-";
        case Phase::I: return "I";
        case Phase::II: return "II";
        case Phase::III: return "III";
    }
    return "?";
}

Metric default_metric(Family f) {
    switch (f) {
        case Family::Clockwise:
        case Family::ChordClockwise:
            return Metric::Clockwise;
        case Family::Absolute:
        case Family::ChordBidirectional:
            return Metric::Absolute;
        case Family::Xor:
            return Metric::Xor;
    }
    throw ParameterError("unknown family");
}

std::int64_t DigitDecomposition::travel(std::uint32_t m) const {
    std::int64_t sum = 0;
    std::int64_t place = 1;
    for (std::int64_t d : digits) {
        sum += d * place;
        place *= static_cast<std::int64_t>(radix);
    }
    return static_cast<std::int64_t>(c) + static_cast<std::int64_t>(m) +
           static_cast<std::int64_t>(m) * sum;
}

DigitDecomposition decompose_clockwise(Distance dist, std::uint32_t kappa, std::uint32_t m) {
    if (kappa < 2 || m < 1) throw ParameterError("decompose_clockwise: bad parameters");
    const std::uint64_t n = upow(kappa, m) * m;
    if (dist < m)
        throw ParameterError("decompose_clockwise: distance " + std::to_string(dist) +
                             " below m is covered by short links only");
    if (dist > n + m - 1)
        throw ParameterError("decompose_clockwise: distance " + std::to_string(dist) +
                             " exceeds n+m-1");

    DigitDecomposition dd;
    dd.c = static_cast<std::uint32_t>(dist % m);
    dd.radix = kappa;
    dd.balanced = false;
    std::uint64_t q = (dist - dd.c) / m - 1; // in [0, kappa^m - 1]
    dd.digits.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        dd.digits[i] = static_cast<std::int64_t>(q % kappa);
        q /= kappa;
    }
    return dd;
}

DigitDecomposition decompose_balanced_absolute(Distance D, std::uint32_t k, std::uint32_t m) {
    if (k < 1 || m < 1) throw ParameterError("decompose_balanced_absolute: bad parameters");
    if (D % m != 0)
        throw ParameterError("decompose_balanced_absolute: level mismatch, distance " +
                             std::to_string(D) + " is not a multiple of m");
    const std::int64_t radix = 2 * static_cast<std::int64_t>(k) + 1;
    const std::int64_t modulus = static_cast<std::int64_t>(upow(radix, m));
    if (static_cast<std::int64_t>(D / m) >= modulus)
        throw ParameterError("decompose_balanced_absolute: distance out of range");

    // Residue of (D - m)/m, then the unique balanced representative.
    std::int64_t v = static_cast<std::int64_t>(D / m) - 1;
    if (v < 0) v += modulus;
    if (v > (modulus - 1) / 2) v -= modulus;

    DigitDecomposition dd;
    dd.c = 0;
    dd.radix = static_cast<std::uint64_t>(radix);
    dd.balanced = true;
    dd.digits.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        std::int64_t r = ((v % radix) + radix) % radix;
        if (r > static_cast<std::int64_t>(k)) r -= radix;
        dd.digits[i] = r;
        v = (v - r) / radix;
    }
    if (v != 0)
        throw InvariantViolation("balanced digit extraction did not terminate");
    return dd;
}

std::uint64_t effective_max_hops(const Topology& topo, const StrategyConfig& cfg) {
    if (cfg.max_hops > 0) return cfg.max_hops;
    switch (topo.params.family) {
        case Family::ChordClockwise:
        case Family::ChordBidirectional:
            return 4ull * topo.params.b;
        default:
            return 4ull * topo.params.m;
    }
}

void validate_config(const Topology& topo, const StrategyConfig& cfg) {
    const Family fam = topo.params.family;
    if (cfg.metric && *cfg.metric != default_metric(fam))
        throw ParameterError("metric " + metric_name(*cfg.metric) +
                             " is not the one the " + family_name(fam) +
                             " family is built for");
    switch (cfg.strategy) {
        case Strategy::Greedy:
            return;
        case Strategy::Hypercubic:
        case Strategy::CongestionFreeRandom:
            if (fam != Family::Clockwise && fam != Family::Absolute)
                throw ParameterError(strategy_name(cfg.strategy) +
                                     " routing is defined for the clockwise and absolute families only");
            return;
        case Strategy::CongestionFreeDeterministic:
            if (fam != Family::Absolute)
                throw ParameterError("deterministic congestion-free routing is defined for the "
                                     "absolute family only");
            return;
    }
    throw ParameterError("unknown strategy");
}

Route greedy_route(const Topology& topo, Metric metric, NodeId s, NodeId t,
                   std::uint64_t max_hops) {
    check_labels(topo, s, t);
    if (max_hops == 0) {
        StrategyConfig cfg;
        max_hops = effective_max_hops(topo, cfg);
    }
    const bool ring_family = topo.params.family == Family::Clockwise ||
                             topo.params.family == Family::Absolute;
    Route r{s, t, {}};
    NodeId u = s;
    while (u != t) {
        if (r.hops.size() >= max_hops)
            throw NonTerminationError("greedy route " + std::to_string(s) + "->" +
                                      std::to_string(t) + " exceeded " +
                                      std::to_string(max_hops) + " hops");
        // Adjacency is sorted by label. On the ring families, equidistant
        // neighbors (absolute metric only) resolve toward one that still
        // covers the target; remaining ties go to the smallest node label.
        const Edge* best = nullptr;
        Distance best_d = 0;
        bool best_covers = false;
        for (const Edge& e : topo.adj[u]) {
            const Distance d = metric_distance(metric, e.to, t, topo.n);
            if (!best || d < best_d) {
                best = &e;
                best_d = d;
                best_covers = ring_family && covers_target(topo, e.to, t);
            } else if (d == best_d && ring_family && !best_covers &&
                       covers_target(topo, e.to, t)) {
                best = &e;
                best_covers = true;
            }
        }
        if (!best) throw InvariantViolation("greedy reached a node with no out-edges");
        r.hops.push_back(Hop{u, best->to, best->kinds, best_d, Phase::None});
        u = best->to;
    }
    return r;
}

Route hypercubic_clockwise(const Topology& topo, NodeId s, NodeId t) {
    require_family(topo, Family::Clockwise, "hypercubic_clockwise");
    check_labels(topo, s, t);
    Route r{s, t, {}};
    if (s == t) return r;

    const std::uint32_t m = topo.params.m;
    const Distance dist = delta_clockwise(s, t, topo.n);
    NodeId u = s;
    if (dist < m) {
        for (Distance i = 0; i < dist; ++i) {
            const NodeId v = wrap(static_cast<std::int64_t>(u) + 1, topo.n);
            push_hop(r, topo, Metric::Clockwise, u, v, Phase::I);
            u = v;
        }
    } else {
        const DigitDecomposition dd = decompose_clockwise(dist, topo.params.kappa, m);
        for (std::uint32_t i = 0; i < dd.c; ++i) {
            const NodeId v = wrap(static_cast<std::int64_t>(u) + 1, topo.n);
            push_hop(r, topo, Metric::Clockwise, u, v, Phase::I);
            u = v;
        }
        u = run_digit_phase(r, topo, Metric::Clockwise, u, dd.digits, topo.params.kappa);
    }
    if (u != t) throw InvariantViolation("hypercubic clockwise route missed its target");
    return r;
}

Route hypercubic_absolute(const Topology& topo, NodeId s, NodeId t) {
    require_family(topo, Family::Absolute, "hypercubic_absolute");
    check_labels(topo, s, t);
    Route r{s, t, {}};
    if (s == t) return r;

    const std::uint32_t m = topo.params.m;
    const std::uint32_t c = level_gap(s, t, m);
    NodeId u = s;
    for (std::uint32_t i = 0; i < c; ++i) {
        const NodeId v = wrap(static_cast<std::int64_t>(u) + 1, topo.n);
        push_hop(r, topo, Metric::Absolute, u, v, Phase::I);
        u = v;
    }
    const Distance D = delta_clockwise(u, t, topo.n);
    const DigitDecomposition dd = decompose_balanced_absolute(D, topo.params.k, m);
    u = run_digit_phase(r, topo, Metric::Absolute, u, dd.digits, topo.radix());
    if (u != t) throw InvariantViolation("hypercubic absolute route missed its target");
    return r;
}

Route congestion_free_clockwise(const Topology& topo, NodeId s, NodeId t,
                                bool strict_loop, std::uint64_t seed) {
    require_family(topo, Family::Clockwise, "congestion_free_clockwise");
    check_labels(topo, s, t);
    Route r{s, t, {}};
    if (s == t && !strict_loop) return r;

    const std::uint32_t m = topo.params.m;
    Rng rng = pair_rng(seed, s, t);
    NodeId u = s;
    for (std::uint32_t i = 0, c = level_gap(s, t, m); i < c; ++i) {
        const Edge& e = topo.adj[u][rng.below(topo.adj[u].size())];
        push_hop(r, topo, Metric::Clockwise, u, e.to, Phase::I);
        u = e.to;
    }
    Distance D = delta_clockwise(u, t, topo.n);
    if (D == 0) {
        if (!strict_loop) return r;
        D = topo.n; // full loop: every digit is kappa-1
    }
    const DigitDecomposition dd = decompose_clockwise(D, topo.params.kappa, m);
    u = run_digit_phase(r, topo, Metric::Clockwise, u, dd.digits, topo.params.kappa);
    if (u != t) throw InvariantViolation("congestion-free clockwise route missed its target");
    return r;
}

Route congestion_free_absolute_random(const Topology& topo, NodeId s, NodeId t,
                                      bool strict_loop, std::uint64_t seed) {
    require_family(topo, Family::Absolute, "congestion_free_absolute_random");
    check_labels(topo, s, t);
    Route r{s, t, {}};
    if (s == t && !strict_loop) return r;

    const std::uint32_t m = topo.params.m;
    // One conceptual out-link per i in [-k,+k] plus the back edge; the merged
    // level-0 edge therefore carries weight 2.
    const std::uint64_t denom = 2ull * topo.params.k + 2;
    Rng rng = pair_rng(seed, s, t);
    NodeId u = s;
    for (std::uint32_t i = 0, c = level_gap(s, t, m); i < c; ++i) {
        std::uint64_t draw = rng.below(denom);
        const Edge* picked = nullptr;
        for (const Edge& e : topo.adj[u]) {
            const std::uint64_t w =
                ((e.kinds & kBack) && (e.kinds & kLong)) ? 2 : 1;
            if (draw < w) {
                picked = &e;
                break;
            }
            draw -= w;
        }
        if (!picked) throw InvariantViolation("phase-I link weights do not cover the draw");
        push_hop(r, topo, Metric::Absolute, u, picked->to, Phase::I);
        u = picked->to;
    }
    const Distance D = delta_clockwise(u, t, topo.n);
    if (D == 0 && !strict_loop) return r;
    const DigitDecomposition dd = decompose_balanced_absolute(D, topo.params.k, m);
    u = run_digit_phase(r, topo, Metric::Absolute, u, dd.digits, topo.radix());
    if (u != t) throw InvariantViolation("congestion-free absolute route missed its target");
    return r;
}

Route congestion_free_absolute_deterministic(const Topology& topo, NodeId s, NodeId t,
                                             bool strict_loop) {
    require_family(topo, Family::Absolute, "congestion_free_absolute_deterministic");
    check_labels(topo, s, t);
    Route r{s, t, {}};
    if (s == t && !strict_loop) return r;

    const std::uint32_t m = topo.params.m;
    const std::uint32_t k = topo.params.k;
    const Distance dist = delta_clockwise(s, t, topo.n);
    const std::uint32_t c = static_cast<std::uint32_t>(dist % m); // == level gap
    const DigitDecomposition dd = decompose_balanced_absolute(dist - c, k, m);

    // Phase I covers 1 + m*a'*radix^level per hop, with a' = floor((k+a)/2)
    // of the digit a at that level; phase II fixes the residual a - a'.
    std::vector<std::int64_t> residual = dd.digits;
    NodeId u = s;
    for (std::uint32_t i = 0; i < c; ++i) {
        const std::uint32_t lvl = topo.level(u);
        const std::int64_t a = dd.digits[lvl];
        const std::int64_t a1 = deterministic_split(k, a);
        const std::int64_t off =
            1 + static_cast<std::int64_t>(m) * a1 *
                    static_cast<std::int64_t>(upow(topo.radix(), lvl));
        const NodeId v = wrap(static_cast<std::int64_t>(u) + off, topo.n);
        push_hop(r, topo, Metric::Absolute, u, v, Phase::I);
        residual[lvl] = a - a1;
        u = v;
    }
    if (u == t && !strict_loop) return r;
    u = run_digit_phase(r, topo, Metric::Absolute, u, residual, topo.radix());
    if (u != t)
        throw InvariantViolation("deterministic congestion-free route missed its target");
    return r;
}

Route route(const Topology& topo, const StrategyConfig& cfg, NodeId s, NodeId t) {
    validate_config(topo, cfg);
    switch (cfg.strategy) {
        case Strategy::Greedy:
            return greedy_route(topo, default_metric(topo.params.family), s, t,
                                effective_max_hops(topo, cfg));
        case Strategy::Hypercubic:
            return topo.params.family == Family::Clockwise ? hypercubic_clockwise(topo, s, t)
                                                           : hypercubic_absolute(topo, s, t);
        case Strategy::CongestionFreeRandom:
            return topo.params.family == Family::Clockwise
                       ? congestion_free_clockwise(topo, s, t, cfg.strict_loop, cfg.seed)
                       : congestion_free_absolute_random(topo, s, t, cfg.strict_loop, cfg.seed);
        case Strategy::CongestionFreeDeterministic:
            return congestion_free_absolute_deterministic(topo, s, t, cfg.strict_loop);
    }
    throw ParameterError("unknown strategy");
}

void enumerate_random_branches(const Topology& topo, NodeId s, NodeId t, bool strict_loop,
                               const std::function<void(const Route&, const Rational&)>& visit) {
    const Family fam = topo.params.family;
    if (fam != Family::Clockwise && fam != Family::Absolute)
        throw ParameterError("branch enumeration applies to the randomized strategies only");
    check_labels(topo, s, t);

    const std::uint32_t m = topo.params.m;
    const Metric met = default_metric(fam);
    Route base{s, t, {}};
    if (s == t && !strict_loop) {
        visit(base, Rational(1));
        return;
    }
    const std::uint32_t c = level_gap(s, t, m);
    const std::uint64_t denom =
        fam == Family::Clockwise ? topo.params.kappa : 2ull * topo.params.k + 2;

    auto complete = [&](Route& r, NodeId u, const Rational& weight) {
        Distance D = delta_clockwise(u, t, topo.n);
        if (D == 0) {
            if (!strict_loop) {
                visit(r, weight);
                return;
            }
            if (fam == Family::Clockwise) D = topo.n;
        }
        const std::size_t mark = r.hops.size();
        const DigitDecomposition dd =
            fam == Family::Clockwise
                ? decompose_clockwise(D, topo.params.kappa, m)
                : decompose_balanced_absolute(D, topo.params.k, m);
        const NodeId end = run_digit_phase(r, topo, met, u, dd.digits, topo.radix());
        if (end != t) throw InvariantViolation("enumerated branch missed its target");
        visit(r, weight);
        r.hops.resize(mark);
    };

    // DFS over the c random phase-I choices, weight-exact.
    std::function<void(NodeId, std::uint32_t, Route&, const Rational&)> descend =
        [&](NodeId u, std::uint32_t depth, Route& r, const Rational& weight) {
            if (depth == c) {
                complete(r, u, weight);
                return;
            }
            for (const Edge& e : topo.adj[u]) {
                const std::uint64_t num =
                    (fam == Family::Absolute && (e.kinds & kBack) && (e.kinds & kLong)) ? 2 : 1;
                push_hop(r, topo, met, u, e.to, Phase::I);
                descend(e.to, depth + 1, r, weight * num / denom);
                r.hops.pop_back();
            }
        };
    descend(s, 0, base, Rational(1));
}

} // namespace papillon
