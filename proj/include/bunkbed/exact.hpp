#pragma once

// Exact connection probabilities via a subset dynamic program, with a full
// 2^|E| enumeration oracle kept deliberately independent of the DP path.
//
// The DP computes, for every vertex subset S containing a source vertex a,
//   conn(S)  = probability the induced subgraph on S is internally connected
//            = 1 - sum over proper T subset S with anchor(S) in T of
//                  conn(T) * prod over edges between T and S\T of (1-p_e)
//   P(MC(a)=S) = conn(S) * prod over edges between S and V\S of (1-p_e)
// where anchor(S) is the lowest-indexed vertex of S. Total work is O(3^|V|)
// subset pairs, so the vertex limit is a hard capacity gate.

#include "bunkbed/errors.hpp"
#include "bunkbed/graph.hpp"
#include "bunkbed/rational.hpp"
#include "bunkbed/union_find.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bunkbed {

inline constexpr int kDefaultDpVertexLimit = 20;
inline constexpr int kDefaultEnumEdgeLimit = 25;

// Exact law of the main component of `source`: every achievable component
// subset (as a vertex bitmask) with its probability. Entries sum to 1.
struct ComponentDistribution {
    int source = 0;
    std::vector<std::pair<std::uint32_t, Rational>> entries;

    Rational total() const {
        Rational sum(0);
        for (const auto& [mask, prob] : entries)
            sum += prob;
        return sum;
    }

    Rational prob_contains(int vertex) const {
        Rational sum(0);
        for (const auto& [mask, prob] : entries)
            if ((mask >> vertex) & 1u)
                sum += prob;
        return sum;
    }
};

class MainComponentTable {
public:
    MainComponentTable(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                       const std::vector<Rational>& probs, int source,
                       int vertex_limit = kDefaultDpVertexLimit)
        : nv_(num_vertices), source_(source) {
        if (nv_ < 1)
            throw std::invalid_argument("MainComponentTable: empty graph");
        if (nv_ > vertex_limit || nv_ > 25)
            throw CapacityError("subset DP limited to " + std::to_string(std::min(vertex_limit, 25)) +
                                " vertices (graph has " + std::to_string(nv_) +
                                "); use the Monte Carlo estimator");
        if (source_ < 0 || source_ >= nv_)
            throw std::invalid_argument("MainComponentTable: source out of range");
        if (probs.size() != edges.size())
            throw std::invalid_argument("MainComponentTable: probability vector size mismatch");
        for (const auto& p : probs)
            if (p < Rational(0) || p > Rational(1))
                throw std::invalid_argument("MainComponentTable: probability outside [0,1]");

        // Relabel so the source is vertex 0; only subsets containing it are
        // ever needed, which cuts the table to 3^(|V|-1) subset pairs.
        auto relabel = [&](int v) { return v == source_ ? 0 : (v == 0 ? source_ : v); };

        // q[a][b] = product over edges {a,b} of (1-p_e), in relabeled ids.
        std::vector<std::vector<Rational>> q(
            static_cast<std::size_t>(nv_),
            std::vector<Rational>(static_cast<std::size_t>(nv_), Rational(1)));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const int a = relabel(edges[e].first);
            const int b = relabel(edges[e].second);
            if (a < 0 || b < 0 || a >= nv_ || b >= nv_ || a == b)
                throw std::invalid_argument("MainComponentTable: bad edge");
            const Rational closed = Rational(1) - probs[e];
            q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *= closed;
            q[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] *= closed;
        }

        half_ = nv_ / 2;
        lo_mask_ = (1u << half_) - 1u;
        const int hi_bits = nv_ - half_;
        wlo_.assign(static_cast<std::size_t>(nv_),
                    std::vector<Rational>(std::size_t{1} << half_, Rational(1)));
        whi_.assign(static_cast<std::size_t>(nv_),
                    std::vector<Rational>(std::size_t{1} << hi_bits, Rational(1)));
        for (int v = 0; v < nv_; ++v) {
            auto& lo = wlo_[static_cast<std::size_t>(v)];
            for (std::uint32_t m = 1; m < (1u << half_); ++m) {
                const int b = std::countr_zero(m);
                lo[m] = lo[m & (m - 1)] * q[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)];
            }
            auto& hi = whi_[static_cast<std::size_t>(v)];
            for (std::uint32_t m = 1; m < (1u << hi_bits); ++m) {
                const int b = std::countr_zero(m) + half_;
                hi[m] = hi[m & (m - 1)] * q[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)];
            }
        }

        // conn_ is indexed by s >> 1; every subset of interest contains vertex 0.
        full_ = (1u << nv_) - 1u;
        conn_.assign(std::size_t{1} << (nv_ - 1), Rational(0));
        for (std::uint32_t s = 1; s <= full_; s += 2) {
            const std::uint32_t rest = s & ~1u;
            if (rest == 0) {
                conn_[s >> 1] = Rational(1);
                continue;
            }
            Rational absorbed(0);
            for (std::uint32_t drop = rest; drop != 0; drop = (drop - 1) & rest) {
                Rational term = conn_[(s ^ drop) >> 1];
                if (!term.is_zero()) {
                    mul_cross(term, s ^ drop, drop);
                    absorbed += term;
                }
            }
            conn_[s >> 1] = Rational(1) - absorbed;
        }
    }

    int num_vertices() const { return nv_; }
    int source() const { return source_; }

    // Probability the whole vertex set lies in one open component.
    const Rational& prob_spanning() const { return conn_[full_ >> 1]; }

    // P(source <-> target); 1 when target == source.
    Rational prob_reaches(int target) const {
        if (target < 0 || target >= nv_)
            throw std::invalid_argument("MainComponentTable: target out of range");
        const int t = target == source_ ? 0 : (target == 0 ? source_ : target);
        if (t == 0)
            return Rational(1);
        Rational sum(0);
        for (std::uint32_t s = 1; s <= full_; s += 2) {
            if (((s >> t) & 1u) == 0)
                continue;
            Rational term = conn_[s >> 1];
            if (term.is_zero())
                continue;
            mul_cross(term, s, full_ ^ s);
            sum += term;
        }
        return sum;
    }

    ComponentDistribution distribution() const {
        ComponentDistribution dist;
        dist.source = source_;
        for (std::uint32_t s = 1; s <= full_; s += 2) {
            Rational prob = conn_[s >> 1];
            if (prob.is_zero())
                continue;
            mul_cross(prob, s, full_ ^ s);
            if (prob.is_zero())
                continue;
            dist.entries.emplace_back(unrelabel_mask(s), std::move(prob));
        }
        std::sort(dist.entries.begin(), dist.entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return dist;
    }

private:
    // acc *= product over edges between the two disjoint vertex sets of (1-p_e)
    void mul_cross(Rational& acc, std::uint32_t part_a, std::uint32_t part_b) const {
        if (std::popcount(part_a) > std::popcount(part_b))
            std::swap(part_a, part_b);
        const std::uint32_t lo = part_b & lo_mask_;
        const std::uint32_t hi = part_b >> half_;
        for (std::uint32_t m = part_a; m != 0; m &= m - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(m));
            acc *= wlo_[v][lo];
            acc *= whi_[v][hi];
        }
    }

    std::uint32_t unrelabel_mask(std::uint32_t s) const {
        if (source_ == 0)
            return s;
        const std::uint32_t bit0 = s & 1u;
        const std::uint32_t bits = (s >> source_) & 1u;
        s &= ~(1u | (1u << source_));
        return s | (bits ? 1u : 0u) | (bit0 ? (1u << source_) : 0u);
    }

    int nv_;
    int source_;
    int half_ = 0;
    std::uint32_t lo_mask_ = 0;
    std::uint32_t full_ = 0;
    std::vector<std::vector<Rational>> wlo_, whi_;
    std::vector<Rational> conn_;
};

// ---- enumeration oracle -------------------------------------------------

// Exact probability of an arbitrary configuration event, by summing the
// product weight prod_e p_e^{w_e} (1-p_e)^{1-w_e} over all 2^|E| masks.
inline Rational prob_event_enum_graph(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                                      const std::vector<Rational>& probs,
                                      const std::function<bool(std::uint64_t)>& event,
                                      int edge_limit = kDefaultEnumEdgeLimit) {
    (void)num_vertices;
    const int m = static_cast<int>(edges.size());
    if (probs.size() != edges.size())
        throw std::invalid_argument("prob_event_enum: probability vector size mismatch");
    if (m > edge_limit)
        throw CapacityError("enumeration limited to " + std::to_string(edge_limit) +
                            " edges (graph has " + std::to_string(m) +
                            "); use the DP engine or the Monte Carlo estimator");
    std::vector<Rational> open(probs.begin(), probs.end());
    std::vector<Rational> closed;
    closed.reserve(open.size());
    for (const auto& p : open)
        closed.push_back(Rational(1) - p);

    Rational total(0);
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        if (!event(mask))
            continue;
        Rational w(1);
        for (int e = 0; e < m; ++e)
            w *= ((mask >> e) & 1u) ? open[static_cast<std::size_t>(e)]
                                    : closed[static_cast<std::size_t>(e)];
        total += w;
    }
    return total;
}

inline Rational prob_connected_enum_graph(int num_vertices,
                                          const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<Rational>& probs, int a, int b,
                                          int edge_limit = kDefaultEnumEdgeLimit) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
        throw std::invalid_argument("prob_connected_enum: vertex out of range");
    if (a == b)
        return Rational(1); // a vertex is always connected to itself
    auto connected = [&](std::uint64_t mask) {
        UnionFind uf(num_vertices);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if ((mask >> e) & 1u)
                uf.unite(edges[e].first, edges[e].second);
        return uf.connected(a, b);
    };
    return prob_event_enum_graph(num_vertices, edges, probs, connected, edge_limit);
}

// ---- spec-facing operations on bunkbed graphs ---------------------------

inline Rational prob_connected_dp(const BunkbedGraph& g, const EdgeProbabilityVector& p, int a, int b,
                                  int vertex_limit = kDefaultDpVertexLimit) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    if (b < 0 || b >= g.num_vertices())
        throw std::invalid_argument("prob_connected_dp: vertex out of range");
    MainComponentTable table(g.num_vertices(), g.edges(), p.values, a, vertex_limit);
    return table.prob_reaches(b);
}

inline Rational prob_connected_enum(const BunkbedGraph& g, const EdgeProbabilityVector& p, int a, int b,
                                    int edge_limit = kDefaultEnumEdgeLimit) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    return prob_connected_enum_graph(g.num_vertices(), g.edges(), p.values, a, b, edge_limit);
}

inline Rational prob_event_enum(const BunkbedGraph& g, const EdgeProbabilityVector& p,
                                const std::function<bool(const Configuration&)>& event,
                                int edge_limit = kDefaultEnumEdgeLimit) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    const int m = g.num_edges();
    return prob_event_enum_graph(
        g.num_vertices(), g.edges(), p.values,
        [&](std::uint64_t mask) { return event(Configuration(mask, m)); }, edge_limit);
}

inline ComponentDistribution main_component_distribution(const BunkbedGraph& g,
                                                         const EdgeProbabilityVector& p, int a,
                                                         int vertex_limit = kDefaultDpVertexLimit) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    MainComponentTable table(g.num_vertices(), g.edges(), p.values, a, vertex_limit);
    return table.distribution();
}

} // namespace bunkbed
