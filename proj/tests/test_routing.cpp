#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "papillon/routing.hpp"
#include "test_util.hpp"

using namespace papillon;
using namespace papillon_test;

TEST_CASE("clockwise digit decomposition") {
    const auto dd = decompose_clockwise(7, 2, 2);
    CHECK(dd.c == 1);
    CHECK(dd.digits == std::vector<std::int64_t>{0, 1});

    const auto boundary = decompose_clockwise(2, 2, 2); // dist == m
    CHECK(boundary.c == 0);
    CHECK(boundary.digits == std::vector<std::int64_t>{0, 0});

    const auto full = decompose_clockwise(8, 2, 2); // dist == n
    CHECK(full.c == 0);
    CHECK(full.digits == std::vector<std::int64_t>{1, 1});

    CHECK_THROWS_AS(decompose_clockwise(1, 2, 2), ParameterError);
    CHECK_THROWS_AS(decompose_clockwise(10, 2, 2), ParameterError);
}

TEST_CASE("clockwise decomposition round-trips exactly") {
    for (auto [kappa, m] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}, {3u, 3u}}) {
        const std::uint64_t n = upow(kappa, m) * m;
        for (Distance dist = m; dist <= n + m - 1; ++dist) {
            const auto dd = decompose_clockwise(dist, kappa, m);
            CHECK(dd.travel(m) == static_cast<std::int64_t>(dist));
            CHECK(dd.c < m);
            for (std::int64_t d : dd.digits) {
                CHECK(d >= 0);
                CHECK(d < static_cast<std::int64_t>(kappa));
            }
        }
    }
}

TEST_CASE("balanced absolute decomposition") {
    CHECK(decompose_balanced_absolute(4, 1, 2).digits == std::vector<std::int64_t>{1, 0});
    CHECK(decompose_balanced_absolute(16, 1, 2).digits == std::vector<std::int64_t>{1, -1});
    CHECK(decompose_balanced_absolute(2, 1, 2).digits == std::vector<std::int64_t>{0, 0});
    CHECK(decompose_balanced_absolute(0, 1, 2).digits == std::vector<std::int64_t>{-1, 0});
    CHECK_THROWS_AS(decompose_balanced_absolute(3, 1, 2), ParameterError);
}

TEST_CASE("balanced decomposition round-trips modulo n") {
    for (auto [k, m] : {std::pair{1u, 2u}, {2u, 2u}, {1u, 3u}}) {
        const std::int64_t n = static_cast<std::int64_t>(upow(2ull * k + 1, m) * m);
        for (Distance D = 0; D < static_cast<Distance>(n); D += m) {
            const auto dd = decompose_balanced_absolute(D, k, m);
            const std::int64_t travel = dd.travel(m);
            CHECK(((travel % n) + n) % n == static_cast<std::int64_t>(D));
            for (std::int64_t d : dd.digits) {
                CHECK(d >= -static_cast<std::int64_t>(k));
                CHECK(d <= static_cast<std::int64_t>(k));
            }
        }
    }
}

TEST_CASE("greedy routes on the ring families") {
    const Topology cw = build_clockwise(2, 2);
    CHECK(path_of(greedy_route(cw, Metric::Clockwise, 0, 7)) ==
          std::vector<NodeId>{0, 5, 6, 7});
    CHECK(greedy_route(cw, Metric::Clockwise, 3, 3).length() == 0);

    // Tie at node 7 between neighbors 8 and 10 breaks toward the smaller label.
    const Topology ab = build_absolute(1, 2);
    CHECK(path_of(greedy_route(ab, Metric::Absolute, 0, 9)) ==
          std::vector<NodeId>{0, 7, 8, 9});
}

TEST_CASE("greedy routes with the xor metric") {
    const Topology topo = build_xor(2, 2);
    CHECK(path_of(greedy_route(topo, Metric::Xor, 0, 7)) == std::vector<NodeId>{0, 5, 3, 7});
    CHECK(path_of(greedy_route(topo, Metric::Xor, 0, 4)) == std::vector<NodeId>{0, 4});
    CHECK(greedy_route(topo, Metric::Xor, 5, 5).length() == 0);
}

TEST_CASE("clockwise greedy strictly decreases the clockwise distance") {
    for (auto [kappa, m] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
        const Topology topo = build_clockwise(kappa, m);
        for (NodeId s = 0; s < topo.n; ++s) {
            for (NodeId t = 0; t < topo.n; ++t) {
                if (s == t) continue;
                const Route r = greedy_route(topo, Metric::Clockwise, s, t);
                Distance prev = delta_clockwise(s, t, topo.n);
                for (const Hop& h : r.hops) {
                    const Distance d = delta_clockwise(h.to, t, topo.n);
                    CHECK(d < prev);
                    prev = d;
                }
            }
        }
    }
}

TEST_CASE("greedy hop cap turns loops into errors") {
    const Topology cw = build_clockwise(2, 2);
    CHECK_THROWS_AS(greedy_route(cw, Metric::Clockwise, 0, 7, 1), NonTerminationError);
}

TEST_CASE("hypercubic clockwise") {
    const Topology topo = build_clockwise(2, 2);
    CHECK(path_of(hypercubic_clockwise(topo, 0, 7)) == std::vector<NodeId>{0, 1, 2, 7});
    CHECK(hypercubic_clockwise(topo, 4, 4).length() == 0);
    CHECK(hypercubic_clockwise(topo, 0, 1).length() == 1); // dist < m: short links

    const Topology topo3 = build_clockwise(2, 3);
    const Route near = hypercubic_clockwise(topo3, 5, 7);
    CHECK(path_of(near) == std::vector<NodeId>{5, 6, 7});

    for (NodeId s = 0; s < topo.n; ++s)
        for (NodeId t = 0; t < topo.n; ++t) {
            const Route r = hypercubic_clockwise(topo, s, t);
            CHECK(valid_route(topo, r));
            CHECK(r.length() <= 2 * topo.params.m - 1);
        }
}

TEST_CASE("hypercubic absolute") {
    const Topology topo = build_absolute(1, 2);
    CHECK(path_of(hypercubic_absolute(topo, 0, 4)) == std::vector<NodeId>{0, 1, 4});
    CHECK(path_of(hypercubic_absolute(topo, 0, 16)) == std::vector<NodeId>{0, 13, 16});
    CHECK(hypercubic_absolute(topo, 9, 9).length() == 0);

    for (NodeId s = 0; s < topo.n; ++s)
        for (NodeId t = 0; t < topo.n; ++t) {
            if (s == t) continue;
            const Route r = hypercubic_absolute(topo, s, t);
            CHECK(valid_route(topo, r));
            CHECK(r.length() <= 2 * topo.params.m - 1);
            // Pure back edges stay unused; the merged level-0 edges count as
            // long links here.
            for (const Hop& h : r.hops) CHECK(h.kinds != kBack);
        }
}

TEST_CASE("phase II lands one level down each hop") {
    const Topology topo = build_absolute(1, 3);
    const std::uint32_t m = topo.params.m;
    for (NodeId s = 0; s < topo.n; s += 5) {
        for (NodeId t = 0; t < topo.n; t += 3) {
            if (s == t) continue;
            for (const Hop& h : hypercubic_absolute(topo, s, t).hops)
                CHECK(topo.level(h.to) == (topo.level(h.from) + m - 1) % m);
        }
    }
}

TEST_CASE("congestion-free clockwise branches") {
    const Topology topo = build_clockwise(2, 2);

    // Both phase-I branches of 0->7 finish in 3 hops with weight 1/2.
    std::vector<std::vector<NodeId>> paths;
    Rational total(0);
    enumerate_random_branches(topo, 0, 7, true, [&](const Route& r, const Rational& w) {
        CHECK(valid_route(topo, r));
        CHECK(r.length() == 3);
        CHECK(w == Rational(1) / 2);
        total += w;
        paths.push_back(path_of(r));
    });
    CHECK(total == 1);
    CHECK(paths.size() == 2);

    // A level-gap-zero pair reduces to the hypercubic phase II.
    enumerate_random_branches(topo, 0, 4, true, [&](const Route& r, const Rational& w) {
        CHECK(w == 1);
        CHECK(path_of(r) == path_of(hypercubic_clockwise(topo, 0, 4)));
    });
}

TEST_CASE("strict loop runs the maximal long links when phase I lands on t") {
    const Topology topo = build_clockwise(2, 2);
    bool saw_landing_branch = false;
    enumerate_random_branches(topo, 4, 5, true, [&](const Route& r, const Rational& w) {
        CHECK(r.length() == 3); // c + m always, in strict mode
        CHECK(w == Rational(1) / 2);
        if (r.hops[0].to == 5) {
            saw_landing_branch = true;
            CHECK(path_of(r) == std::vector<NodeId>{4, 5, 0, 5});
            CHECK(r.hops[1].kinds == kLong);
            CHECK(r.hops[2].kinds == kLong);
        }
    });
    CHECK(saw_landing_branch);

    // Without strict mode the landing branch stops at the target.
    std::size_t shortest = 99;
    enumerate_random_branches(topo, 4, 5, false, [&](const Route& r, const Rational&) {
        shortest = std::min(shortest, r.length());
        CHECK(valid_route(topo, r));
    });
    CHECK(shortest == 1);
}

TEST_CASE("congestion-free absolute branch weights") {
    const Topology topo = build_absolute(1, 2);

    // From a level-1 source all 2k+2 = 4 conceptual links are distinct edges.
    std::size_t branches = 0;
    Rational total(0);
    enumerate_random_branches(topo, 0, 1, true, [&](const Route& r, const Rational& w) {
        ++branches;
        total += w;
        CHECK(w == Rational(1) / 4);
        CHECK(valid_route(topo, r));
        CHECK(r.length() <= 3);
    });
    CHECK(branches == 4);
    CHECK(total == 1);

    // From a level-0 source the merged edge absorbs two conceptual links.
    std::map<NodeId, Rational> first_hop_weight;
    enumerate_random_branches(topo, 1, 2, true, [&](const Route& r, const Rational& w) {
        first_hop_weight[r.hops[0].to] += w;
    });
    CHECK(first_hop_weight.size() == 3);
    CHECK(first_hop_weight[0] == Rational(1) / 2);
    CHECK(first_hop_weight[2] == Rational(1) / 4);
    CHECK(first_hop_weight[4] == Rational(1) / 4);
}

TEST_CASE("deterministic congestion-free routing") {
    const Topology topo = build_absolute(1, 2);
    const std::uint32_t m = topo.params.m;

    for (NodeId s = 0; s < topo.n; ++s)
        for (NodeId t = 0; t < topo.n; ++t) {
            if (s == t) continue;
            const Route r = congestion_free_absolute_deterministic(topo, s, t, true);
            CHECK(valid_route(topo, r));
            CHECK(r.length() <= 2 * m - 1);
            for (const Hop& h : r.hops) CHECK(h.kinds != kBack);
            // Level-aligned pairs have no phase I, so the route matches the
            // hypercubic one.
            if (s % m == t % m) CHECK(path_of(r) == path_of(hypercubic_absolute(topo, s, t)));
        }
}

TEST_CASE("randomized routes are reproducible per (seed, s, t)") {
    const Topology cw = build_clockwise(3, 2);
    const Topology ab = build_absolute(1, 2);
    for (NodeId s = 0; s < 10; ++s) {
        for (NodeId t = 0; t < 10; ++t) {
            const Route a = congestion_free_clockwise(cw, s, t, true, 42);
            const Route b = congestion_free_clockwise(cw, s, t, true, 42);
            CHECK(path_of(a) == path_of(b));
            const Route c = congestion_free_absolute_random(ab, s, t, true, 42);
            const Route d = congestion_free_absolute_random(ab, s, t, true, 42);
            CHECK(path_of(c) == path_of(d));
        }
    }
}

TEST_CASE("strict treatment of the diagonal") {
    const Topology topo = build_clockwise(2, 2);
    StrategyConfig strict;
    strict.strategy = Strategy::CongestionFreeRandom;
    strict.strict_loop = true;
    CHECK(route(topo, strict, 3, 3).length() == topo.params.m);
    strict.strict_loop = false;
    CHECK(route(topo, strict, 3, 3).length() == 0);

    StrategyConfig greedy;
    greedy.strategy = Strategy::Greedy;
    CHECK(route(topo, greedy, 3, 3).length() == 0);
}

TEST_CASE("config validation") {
    const Topology cw = build_clockwise(2, 2);
    const Topology xr = build_xor(2, 2);
    StrategyConfig cfg;

    cfg.strategy = Strategy::CongestionFreeDeterministic;
    CHECK_THROWS_AS(validate_config(cw, cfg), ParameterError);

    cfg.strategy = Strategy::Hypercubic;
    CHECK_THROWS_AS(validate_config(xr, cfg), ParameterError);

    cfg.strategy = Strategy::Greedy;
    cfg.metric = Metric::Absolute;
    CHECK_THROWS_AS(validate_config(cw, cfg), ParameterError);
    cfg.metric = Metric::Clockwise;
    CHECK_NOTHROW(validate_config(cw, cfg));
}

TEST_CASE("routes on m=1 instances") {
    const Topology cw = build_clockwise(3, 1);
    for (NodeId s = 0; s < cw.n; ++s)
        for (NodeId t = 0; t < cw.n; ++t) {
            CHECK(valid_route(cw, greedy_route(cw, Metric::Clockwise, s, t)));
            CHECK(valid_route(cw, hypercubic_clockwise(cw, s, t)));
        }

    const Topology ab = build_absolute(2, 1);
    for (NodeId s = 0; s < ab.n; ++s)
        for (NodeId t = 0; t < ab.n; ++t) {
            CHECK(valid_route(ab, greedy_route(ab, Metric::Absolute, s, t)));
            CHECK(valid_route(ab, hypercubic_absolute(ab, s, t)));
        }
}
