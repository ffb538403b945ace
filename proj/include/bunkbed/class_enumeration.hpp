#pragma once

// Brute-force cross-checks for the counting closed forms: tally every induced
// subgraph of the K_n bunkbed containing u by its (x, y, z) signature, and
// count boundary edges of an explicit class member directly. These paths
// share nothing with the factorial formulas they validate.

#include "bunkbed/counting.hpp"
#include "bunkbed/errors.hpp"
#include "bunkbed/graph.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <map>

namespace bunkbed {

struct EnumeratedClassCounts {
    BigInt total = 0;       // subgraphs containing u
    BigInt with_v = 0;      // ... and v          (C1)
    BigInt with_vprime = 0; // ... and v'         (C2)
};

// u is bottom column 0; v is bottom column 1 (meaningful when n >= 2).
inline std::map<std::array<int, 3>, EnumeratedClassCounts> enumerate_class_counts(
    int n, int column_limit = 7) {
    if (n < 1)
        throw std::invalid_argument("enumerate_class_counts: need n >= 1");
    if (n > column_limit)
        throw CapacityError("enumerate_class_counts: 2^(2n) subsets is limited to n <= " +
                            std::to_string(column_limit));
    std::map<std::array<int, 3>, EnumeratedClassCounts> tally;
    const std::uint32_t bottom_mask = (1u << n) - 1u;
    const std::uint32_t count = 1u << (2 * n);
    for (std::uint32_t s = 1; s < count; s += 2) { // u = vertex 0 always present
        const std::uint32_t bottom = s & bottom_mask;
        const std::uint32_t top = s >> n;
        const int x = std::popcount(bottom);
        const int y = std::popcount(top);
        const int z = std::popcount(bottom & top);
        auto& cell = tally[{x, y, z}];
        cell.total += 1;
        if (n >= 2) {
            if ((bottom >> 1) & 1u)
                cell.with_v += 1;
            if ((top >> 1) & 1u)
                cell.with_vprime += 1;
        }
    }
    return tally;
}

// Cut-edge count of one explicit member of G_{x,y,z}: bottom columns 0..x-1,
// top columns 0..z-1 and x..x+y-z-1, embedded in the K_n bunkbed.
inline BigInt boundary_count_direct(int n, const Triplet& t) {
    require_valid(n, t);
    const BunkbedGraph g(OriginalGraph::complete(n));
    std::vector<bool> in_set(static_cast<std::size_t>(g.num_vertices()), false);
    for (int c = 0; c < t.x; ++c)
        in_set[static_cast<std::size_t>(g.bottom_vertex(c))] = true;
    for (int c = 0; c < t.z; ++c)
        in_set[static_cast<std::size_t>(g.top_vertex(c))] = true;
    for (int c = t.x; c < t.x + t.y - t.z; ++c)
        in_set[static_cast<std::size_t>(g.top_vertex(c))] = true;
    BigInt cut = 0;
    for (const auto& [a, b] : g.edges())
        if (in_set[static_cast<std::size_t>(a)] != in_set[static_cast<std::size_t>(b)])
            cut += 1;
    return cut;
}

} // namespace bunkbed
