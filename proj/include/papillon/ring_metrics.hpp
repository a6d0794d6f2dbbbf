#pragma once

#include <bit>
#include <cstdint>

#include "papillon/errors.hpp"

namespace papillon {

using NodeId = std::uint64_t;
using Distance = std::uint64_t;

// Clockwise gap from u to v on a ring of n positions.
inline Distance delta_clockwise(NodeId u, NodeId v, std::uint64_t n) {
    if (n == 0 || u >= n || v >= n)
        throw ParameterError("delta_clockwise: label out of range for ring size " + std::to_string(n));
    return v >= u ? v - u : n + v - u;
}

// Shorter of the two ring directions; symmetric, at most n/2.
inline Distance delta_absolute(NodeId u, NodeId v, std::uint64_t n) {
    const Distance cw = delta_clockwise(u, v, n);
    const Distance ccw = n - cw; // equals delta_clockwise(v, u, n) for u != v
    return cw <= ccw ? cw : ccw;
}

// Hamming distance between the binary labels.
inline Distance delta_xor(NodeId u, NodeId v) {
    return static_cast<Distance>(std::popcount(u ^ v));
}

} // namespace papillon
