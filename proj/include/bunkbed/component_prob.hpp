#pragma once

// Canonical class representatives and the connectedness function P(x,y,z):
// every member of G_{x,y,z} in the K_n bunkbed is isomorphic to the graph
// with a bottom clique on x vertices, a top clique on y vertices, and
// vertical edges on the first z columns. Also the bounds on P used around
// the (1-p)^B * P comparison: the vertical-edge upper bound, the
// clique-product lower bound, the K_n connectivity lower bound, and the
// connected-labeled-graph cross-check at p = 1/2.

#include "bunkbed/counting.hpp"
#include "bunkbed/exact.hpp"
#include "bunkbed/rational.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bunkbed {

struct CanonicalClassGraph {
    Triplet triplet;
    int n = 0;
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges; // bottom 0..x-1, top x..x+y-1
};

inline CanonicalClassGraph canonical_graph(int n, const Triplet& t) {
    require_valid(n, t);
    CanonicalClassGraph g;
    g.triplet = t;
    g.n = n;
    g.num_vertices = t.x + t.y;
    for (int i = 0; i < t.x; ++i)
        for (int j = i + 1; j < t.x; ++j)
            g.edges.emplace_back(i, j);
    for (int i = 0; i < t.y; ++i)
        for (int j = i + 1; j < t.y; ++j)
            g.edges.emplace_back(t.x + i, t.x + j);
    for (int c = 0; c < t.z; ++c)
        g.edges.emplace_back(c, t.x + c);
    return g;
}

inline Rational class_connected_prob(const CanonicalClassGraph& g, const Rational& p,
                                     int vertex_limit = kDefaultDpVertexLimit) {
    if (g.num_vertices == 1)
        return Rational(1);
    const std::vector<Rational> probs(g.edges.size(), p);
    MainComponentTable table(g.num_vertices, g.edges, probs, 0, vertex_limit);
    return table.prob_spanning();
}

// P(x,y,z): probability the canonical class representative is connected at
// constant parameter p. P(x,y,0) = 0 for y >= 1; P(1,0,0) = 1.
inline Rational prob_connected_xyz(int n, const Triplet& t, const Rational& p,
                                   int vertex_limit = kDefaultDpVertexLimit) {
    return class_connected_prob(canonical_graph(n, t), p, vertex_limit);
}

// Connectedness probability of K_m; by convention 1 for m <= 1. This is the
// clique factor P(m,0,0), usable for the top clique alone as well.
inline Rational clique_connected_prob(int m, const Rational& p,
                                      int vertex_limit = kDefaultDpVertexLimit) {
    if (m < 0)
        throw std::invalid_argument("clique_connected_prob: negative size");
    if (m <= 1)
        return Rational(1);
    OriginalGraph km = OriginalGraph::complete(m);
    const std::vector<Rational> probs(km.edges.size(), p);
    MainComponentTable table(m, km.edges, probs, 0, vertex_limit);
    return table.prob_spanning();
}

// P(x,y,z) <= 1 - (1-p)^z whenever y >= 1: a connected class member needs at
// least one open vertical edge.
inline Rational vertical_upper_bound(const Triplet& t, const Rational& p) {
    return Rational(1) - (Rational(1) - p).pow(static_cast<unsigned long>(t.z));
}

// P(x,y,z) >= P(x,0,0) * P(0,y,0) * (1 - (1-p)^z): both cliques connected and
// at least one vertical open.
inline Rational product_lower_bound(int n, const Triplet& t, const Rational& p,
                                    int vertex_limit = kDefaultDpVertexLimit) {
    require_valid(n, t);
    return clique_connected_prob(t.x, p, vertex_limit) *
           clique_connected_prob(t.y, p, vertex_limit) * vertical_upper_bound(t, p);
}

// P(n,0,0) >= 2 - (1 + (1-p)^{n/2})^n. For odd n the exponent floor(n/2) is
// used, which only weakens the bound while keeping the arithmetic exact.
inline Rational kn_lower_bound(int n, const Rational& p) {
    if (n < 2)
        throw std::invalid_argument("kn_lower_bound: need n >= 2");
    const Rational r = (Rational(1) - p).pow(static_cast<unsigned long>(n / 2));
    return Rational(2) - (Rational(1) + r).pow(static_cast<unsigned long>(n));
}

// Number of connected labeled graphs on n vertices, n = 0..10.
inline const std::array<long long, 11>& connected_labeled_graph_counts() {
    static const std::array<long long, 11> counts = {
        1LL,          1LL,           1LL,           4LL,           38LL,        728LL,
        26704LL,      1866256LL,     251548592LL,   66296291072LL, 29184353055900LL};
    return counts;
}

// Checks P(n,0,0) at p = 1/2 against the connected-labeled-graph table
// (count / 2^binom(n,2)) and, for n >= 2, that the value is >= 1/2.
inline bool oeis_connected_check(int n, int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 1 || n > 10)
        throw std::invalid_argument("oeis_connected_check: n must be in [1,10]");
    const Rational half(1, 2);
    const Rational actual = clique_connected_prob(n, half, vertex_limit);
    const BigInt pairs = binomial(n, 2);
    BigInt denom(1);
    for (BigInt i = 0; i < pairs; ++i)
        denom *= 2;
    const Rational expected(BigInt(connected_labeled_graph_counts()[static_cast<std::size_t>(n)]),
                            denom);
    if (actual != expected)
        return false;
    return n < 2 || actual >= half;
}

// (1-p)^{B(t)} * P(t), the per-class weight of the decomposition.
inline Rational boundary_weighted_prob(int n, const Triplet& t, const Rational& p,
                                       int vertex_limit = kDefaultDpVertexLimit) {
    const BigInt b = boundary_count(n, t);
    return prob_connected_xyz(n, t, p, vertex_limit) *
           (Rational(1) - p).pow(b.convert_to<unsigned long>());
}

// Same-sum comparison: with x+y = x'+y' and common z, the more spread triplet
// carries the larger (1-p)^B * P for p >= 1/2.
inline bool check_lemma_42(int n, const Rational& p, const Triplet& a, const Triplet& b,
                           int vertex_limit = kDefaultDpVertexLimit) {
    require_valid(n, a);
    require_valid(n, b);
    if (a.x + a.y != b.x + b.y || a.z != b.z)
        throw std::invalid_argument("check_lemma_42: need x+y = x'+y' and equal z");
    const int spread_a = a.x > a.y ? a.x - a.y : a.y - a.x;
    const int spread_b = b.x > b.y ? b.x - b.y : b.y - b.x;
    const Rational va = boundary_weighted_prob(n, a, p, vertex_limit);
    const Rational vb = boundary_weighted_prob(n, b, p, vertex_limit);
    if (spread_a == spread_b)
        return va == vb;
    return spread_a > spread_b ? va >= vb : vb >= va;
}

// P(x+1,y,z) >= (1-p)^2 P(x,y+1,z).
inline bool check_recurrence(int n, const Triplet& t, const Rational& p,
                             int vertex_limit = kDefaultDpVertexLimit) {
    const Triplet lhs{t.x + 1, t.y, t.z};
    const Triplet rhs{t.x, t.y + 1, t.z};
    require_valid(n, lhs);
    require_valid(n, rhs);
    const Rational closed = Rational(1) - p;
    return prob_connected_xyz(n, lhs, p, vertex_limit) >=
           closed * closed * prob_connected_xyz(n, rhs, p, vertex_limit);
}

} // namespace bunkbed
