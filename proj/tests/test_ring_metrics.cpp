#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "papillon/ring_metrics.hpp"

using namespace papillon;

TEST_CASE("clockwise distance cases") {
    CHECK(delta_clockwise(2, 5, 12) == 3);
    CHECK(delta_clockwise(5, 2, 12) == 9);
    CHECK(delta_clockwise(7, 7, 12) == 0);
    CHECK(delta_clockwise(0, 11, 12) == 11);
    CHECK(delta_clockwise(11, 0, 12) == 1);
}

TEST_CASE("absolute distance cases") {
    CHECK(delta_absolute(2, 5, 12) == 3);
    CHECK(delta_absolute(1, 11, 12) == 2);
    CHECK(delta_absolute(4, 4, 12) == 0);
    CHECK(delta_absolute(0, 6, 12) == 6);
}

TEST_CASE("xor distance cases") {
    CHECK(delta_xor(5, 6) == 2);
    CHECK(delta_xor(0, 7) == 3);
    CHECK(delta_xor(9, 9) == 0);
}

TEST_CASE("labels are validated") {
    CHECK_THROWS_AS(delta_clockwise(12, 0, 12), ParameterError);
    CHECK_THROWS_AS(delta_clockwise(0, 12, 12), ParameterError);
    CHECK_THROWS_AS(delta_clockwise(0, 0, 0), ParameterError);
    CHECK_THROWS_AS(delta_absolute(3, 9, 9), ParameterError);
}

TEST_CASE("ring metric properties") {
    for (std::uint64_t n : {1ull, 2ull, 3ull, 8ull, 12ull, 17ull}) {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = 0; v < n; ++v) {
                const Distance cw = delta_clockwise(u, v, n);
                const Distance ccw = delta_clockwise(v, u, n);
                if (u != v) CHECK(cw + ccw == n);
                CHECK(delta_absolute(u, v, n) == std::min(cw, ccw));
                CHECK(delta_absolute(u, v, n) == delta_absolute(v, u, n));
                CHECK(delta_absolute(u, v, n) <= n / 2);
                CHECK((cw == 0) == (u == v));
            }
        }
    }
}

TEST_CASE("xor metric is a Hamming metric") {
    for (NodeId a = 0; a < 32; ++a) {
        for (NodeId b = 0; b < 32; ++b) {
            CHECK(delta_xor(a, b) == delta_xor(b, a));
            CHECK((delta_xor(a, b) == 0) == (a == b));
            for (NodeId c = 0; c < 32; ++c)
                CHECK(delta_xor(a, c) <= delta_xor(a, b) + delta_xor(b, c));
        }
    }
}
