#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "papillon/topology.hpp"
#include "test_util.hpp"

using namespace papillon;
using namespace papillon_test;

TEST_CASE("ring levels") {
    CHECK(level_ring(0, 2) == 1);
    CHECK(level_ring(1, 2) == 0);
    CHECK(level_ring(5, 3) == 0);
    CHECK(level_ring(6, 3) == 2);
}

TEST_CASE("xor levels") {
    CHECK(level_xor(5, 2, 2) == 1);
    CHECK(level_xor(0, 2, 2) == 0);
    CHECK(level_xor(3, 2, 2) == 0);
    CHECK(level_xor(4, 2, 2) == 1);
}

TEST_CASE("clockwise family construction") {
    const Topology topo = build_clockwise(2, 2);
    CHECK(topo.n == 8);
    CHECK(targets_of(topo, 0) == std::set<NodeId>{1, 5});
    CHECK(targets_of(topo, 1) == std::set<NodeId>{2, 4});
    CHECK(topo.find_edge(0, 1)->kinds == kShort);
    CHECK(topo.find_edge(0, 5)->kinds == kLong);
    for (NodeId u = 0; u < topo.n; ++u) CHECK(topo.adj[u].size() == 2);
    CHECK(topo.warnings.empty());
}

TEST_CASE("clockwise family matches the offset formula") {
    for (auto [kappa, m] : {std::pair{2u, 2u}, {3u, 2u}, {4u, 2u}, {2u, 3u}}) {
        const Topology topo = build_clockwise(kappa, m);
        for (NodeId u = 0; u < topo.n; ++u) {
            std::set<NodeId> expect;
            const std::uint64_t step = upow(kappa, level_ring(u, m)) * m;
            for (std::uint32_t i = 0; i < kappa; ++i)
                expect.insert((u + 1 + i * step) % topo.n);
            CHECK(targets_of(topo, u) == expect);
        }
    }
}

TEST_CASE("absolute family construction") {
    const Topology topo = build_absolute(1, 2);
    CHECK(topo.n == 18);
    CHECK(targets_of(topo, 0) == std::set<NodeId>{1, 7, 13, 17});
    CHECK(topo.find_edge(0, 1)->kinds == kShort);
    CHECK(topo.find_edge(0, 7)->kinds == kLong);
    CHECK(topo.find_edge(0, 13)->kinds == kLong);
    CHECK(topo.find_edge(0, 17)->kinds == kBack);

    // At level 0 the i = -1 long link and the back edge merge into one edge.
    CHECK(targets_of(topo, 1) == std::set<NodeId>{0, 2, 4});
    CHECK(topo.find_edge(1, 0)->kinds == (kLong | kBack));
    CHECK(topo.find_edge(1, 2)->kinds == kShort);
    CHECK(topo.find_edge(1, 4)->kinds == kLong);

    for (NodeId u = 0; u < topo.n; ++u) {
        const std::size_t deg = topo.adj[u].size();
        if (topo.level(u) == 0)
            CHECK(deg == 3); // 2k+1: back edge merged
        else
            CHECK(deg == 4); // 2k+2
    }
}

TEST_CASE("absolute family matches the offset formula") {
    for (auto [k, m] : {std::pair{1u, 2u}, {2u, 2u}, {1u, 3u}}) {
        const Topology topo = build_absolute(k, m);
        const std::int64_t radix = 2ll * k + 1;
        for (NodeId u = 0; u < topo.n; ++u) {
            std::set<NodeId> expect;
            std::int64_t place = 1;
            for (std::uint32_t i = 0; i < level_ring(u, m); ++i) place *= radix;
            for (std::int64_t i = -static_cast<std::int64_t>(k);
                 i <= static_cast<std::int64_t>(k); ++i) {
                const std::int64_t off = 1 + i * place * m;
                expect.insert(static_cast<NodeId>(
                    ((static_cast<std::int64_t>(u) + off) % static_cast<std::int64_t>(topo.n) +
                     topo.n) % topo.n));
            }
            expect.insert(static_cast<NodeId>(
                ((static_cast<std::int64_t>(u) + 1 - static_cast<std::int64_t>(m)) %
                     static_cast<std::int64_t>(topo.n) + topo.n) % topo.n));
            expect.erase(u);
            CHECK(targets_of(topo, u) == expect);
        }
    }
}

TEST_CASE("xor family construction uses digit replacement") {
    const Topology topo = build_xor(2, 2);
    CHECK(topo.n == 8);
    CHECK(targets_of(topo, 0) == std::set<NodeId>{4, 5});
    CHECK(targets_of(topo, 2) == std::set<NodeId>{6, 7});
    CHECK(targets_of(topo, 5) == std::set<NodeId>{1, 3});
    for (NodeId u = 0; u < topo.n; ++u) {
        CHECK(topo.adj[u].size() == 2);
        for (const Edge& e : topo.adj[u]) CHECK(e.kinds == kLong);
    }
}

TEST_CASE("chord baselines") {
    const Topology bi = build_chord(4, true);
    CHECK(bi.n == 16);
    for (NodeId u = 0; u < bi.n; ++u) CHECK(bi.adj[u].size() == 7); // 2b-1

    const Topology uni = build_chord(4, false);
    CHECK(targets_of(uni, 0) == std::set<NodeId>{1, 2, 4, 8});

    const Topology small = build_chord(2, true);
    CHECK(targets_of(small, 0) == std::set<NodeId>{1, 2, 3});
    CHECK((small.find_edge(0, 1)->kinds & kShort) != 0);
    CHECK((small.find_edge(0, 2)->kinds & kFinger) != 0);
}

TEST_CASE("level step invariants") {
    // Ring families: every edge lands one level down (mod m), back edges
    // included. The xor family steps one level up.
    for (const Topology& topo :
         {build_clockwise(2, 2), build_clockwise(3, 3), build_absolute(1, 2),
          build_absolute(1, 3)}) {
        const std::uint32_t m = topo.params.m;
        for (NodeId u = 0; u < topo.n; ++u)
            for (const Edge& e : topo.adj[u])
                CHECK(topo.level(e.to) == (topo.level(u) + m - 1) % m);
    }
    for (const Topology& topo : {build_xor(2, 2), build_xor(2, 3), build_xor(4, 2)}) {
        const std::uint32_t m = topo.params.m;
        for (NodeId u = 0; u < topo.n; ++u)
            for (const Edge& e : topo.adj[u])
                CHECK(topo.level(e.to) == (topo.level(u) + 1) % m);
    }
}

TEST_CASE("short edges have ring offset exactly one") {
    for (const Topology& topo :
         {build_clockwise(3, 2), build_absolute(2, 2), build_chord(4, true)}) {
        for (NodeId u = 0; u < topo.n; ++u) {
            for (const Edge& e : topo.adj[u]) {
                const bool is_plus_one = e.to == (u + 1) % topo.n;
                CHECK(((e.kinds & kShort) != 0) == is_plus_one);
            }
        }
    }
}

TEST_CASE("node count formulas") {
    CHECK(build_clockwise(3, 2).n == 18);
    CHECK(build_clockwise(2, 3).n == 24);
    CHECK(build_absolute(2, 2).n == 50);
    CHECK(build_absolute(1, 3).n == 81);
    CHECK(build_xor(4, 2).n == 32);
    CHECK(build_xor(2, 3).n == 24);
    CHECK(build_chord(6, true).n == 64);
}

TEST_CASE("m=1 degeneracies drop self loops with a warning") {
    const Topology cw = build_clockwise(3, 1);
    CHECK(cw.n == 3);
    CHECK_FALSE(cw.warnings.empty());
    for (NodeId u = 0; u < cw.n; ++u) {
        CHECK(cw.adj[u].size() == 2);
        for (const Edge& e : cw.adj[u]) CHECK(e.to != u);
    }

    const Topology ab = build_absolute(1, 1);
    CHECK(ab.n == 3);
    CHECK_FALSE(ab.warnings.empty());

    const Topology xr = build_xor(2, 1);
    CHECK(xr.n == 2);
    CHECK_FALSE(xr.warnings.empty());
    CHECK(targets_of(xr, 0) == std::set<NodeId>{1});
}

TEST_CASE("parameter validation and the size cap") {
    CHECK_THROWS_AS(build_clockwise(1, 2), ParameterError);
    CHECK_THROWS_AS(build_clockwise(2, 0), ParameterError);
    CHECK_THROWS_AS(build_absolute(0, 2), ParameterError);
    CHECK_THROWS_AS(build_xor(3, 2), ParameterError);
    CHECK_THROWS_AS(build_xor(0, 2), ParameterError);
    CHECK_THROWS_AS(build_chord(1, true), ParameterError);
    CHECK_THROWS_AS(build_clockwise(10, 6), SizeError);
    CHECK_THROWS_AS(build_clockwise(2, 4, 50), SizeError);
}

TEST_CASE("adjacency lists are sorted and deduplicated") {
    for (const Topology& topo :
         {build_clockwise(3, 2), build_absolute(1, 3), build_xor(4, 2),
          build_chord(4, true)}) {
        for (NodeId u = 0; u < topo.n; ++u) {
            for (std::size_t i = 1; i < topo.adj[u].size(); ++i)
                CHECK(topo.adj[u][i - 1].to < topo.adj[u][i].to);
        }
    }
}
