#pragma once

// Averaged form of the conjecture via the per-configuration cluster identity,
// the joint-disconnection upper bound on the difference, and the line-segment
// closed form through the first-open-vertical index tau.

#include "bunkbed/exact.hpp"
#include "bunkbed/graph.hpp"
#include "bunkbed/rational.hpp"
#include "bunkbed/union_find.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bunkbed {

// Law of a random bottom vertex, indexed by column.
struct BottomDistribution {
    std::vector<Rational> weights;

    void validate(int columns) const {
        if (static_cast<int>(weights.size()) != columns)
            throw std::invalid_argument("BottomDistribution: size mismatch");
        Rational sum(0);
        for (const auto& w : weights) {
            if (w < Rational(0))
                throw std::invalid_argument("BottomDistribution: negative weight");
            sum += w;
        }
        if (sum != Rational(1))
            throw std::invalid_argument("BottomDistribution: weights must sum to 1");
    }

    static BottomDistribution uniform(int columns) {
        BottomDistribution d;
        d.weights.assign(static_cast<std::size_t>(columns), Rational(1, columns));
        return d;
    }

    static BottomDistribution point(int columns, int column) {
        BottomDistribution d;
        d.weights.assign(static_cast<std::size_t>(columns), Rational(0));
        d.weights.at(static_cast<std::size_t>(column)) = Rational(1);
        return d;
    }
};

// Bottom/top slices of each open cluster, with their d-masses. Top-slice mass
// is d of the columns present in the top slice (the symmetric lifts).
struct ClusterSlices {
    struct Slice {
        std::vector<int> bottom, top; // vertex indices
        Rational bottom_mass, top_mass;
    };
    std::vector<Slice> clusters;
};

inline ClusterSlices cluster_slices(const BunkbedGraph& g, const Configuration& config,
                                    const BottomDistribution& d) {
    d.validate(g.columns());
    if (config.edge_count != g.num_edges())
        throw std::invalid_argument("cluster_slices: configuration width mismatch");
    UnionFind uf(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (config.is_open(e))
            uf.unite(g.edges()[static_cast<std::size_t>(e)].first,
                     g.edges()[static_cast<std::size_t>(e)].second);
    std::map<int, ClusterSlices::Slice> by_root;
    for (int v = 0; v < g.num_vertices(); ++v) {
        auto& slice = by_root[uf.find(v)];
        const Rational& mass = d.weights[static_cast<std::size_t>(g.column(v))];
        if (g.level(v) == 0) {
            slice.bottom.push_back(v);
            slice.bottom_mass += mass;
        } else {
            slice.top.push_back(v);
            slice.top_mass += mass;
        }
    }
    ClusterSlices out;
    for (auto& [root, slice] : by_root)
        out.clusters.push_back(std::move(slice));
    return out;
}

// For one configuration: E[1(X<->Y) + 1(X'<->Y')] - E[1(X<->Y') + 1(X'<->Y)],
// with X, Y iid on bottom columns by d and primes the symmetric lifts. The
// value is recomputed as the cluster sum of squared slice-mass differences;
// both routes must agree exactly, and the value is >= 0.
inline Rational mean_identity_check(const BunkbedGraph& g, const Configuration& config,
                                    const BottomDistribution& d) {
    const auto slices = cluster_slices(g, config, d);
    Rational sum_squares(0);
    for (const auto& c : slices.clusters) {
        const Rational gap = c.bottom_mass - c.top_mass;
        sum_squares += gap * gap;
    }

    // Direct route, pair by pair.
    UnionFind uf(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (config.is_open(e))
            uf.unite(g.edges()[static_cast<std::size_t>(e)].first,
                     g.edges()[static_cast<std::size_t>(e)].second);
    Rational direct(0);
    const int n = g.columns();
    for (int a = 0; a < n; ++a) {
        if (d.weights[static_cast<std::size_t>(a)].is_zero())
            continue;
        for (int b = 0; b < n; ++b) {
            if (d.weights[static_cast<std::size_t>(b)].is_zero())
                continue;
            const Rational w =
                d.weights[static_cast<std::size_t>(a)] * d.weights[static_cast<std::size_t>(b)];
            const int same = (uf.connected(a, b) ? 1 : 0) +
                             (uf.connected(g.top_vertex(a), g.top_vertex(b)) ? 1 : 0);
            const int cross = (uf.connected(a, g.top_vertex(b)) ? 1 : 0) +
                              (uf.connected(g.top_vertex(a), b) ? 1 : 0);
            direct += w * Rational(same - cross);
        }
    }
    if (direct != sum_squares)
        throw std::logic_error("mean_identity_check: cluster route disagrees with pair route");
    return sum_squares;
}

// E[P(X<->Y)] >= E[P(X<->Y')] for a constrained vector, by full enumeration.
// The expected difference must equal half the expectation of the
// per-configuration identity value.
inline bool mean_inequality_check(const BunkbedGraph& g, const EdgeProbabilityVector& p,
                                  const BottomDistribution& d,
                                  int edge_limit = kDefaultEnumEdgeLimit) {
    if (!validate_constrained(g, p))
        throw std::invalid_argument("mean_inequality_check: constrained vector required");
    d.validate(g.columns());
    const int m = g.num_edges();
    if (m > edge_limit)
        throw CapacityError("mean_inequality_check: enumeration limited to " +
                            std::to_string(edge_limit) + " edges");

    std::vector<Rational> open(p.values), closed;
    closed.reserve(open.size());
    for (const auto& v : open)
        closed.push_back(Rational(1) - v);

    const int n = g.columns();
    Rational expected_diff(0), expected_identity(0);
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Rational w(1);
        for (int e = 0; e < m; ++e)
            w *= ((mask >> e) & 1u) ? open[static_cast<std::size_t>(e)]
                                    : closed[static_cast<std::size_t>(e)];
        if (w.is_zero())
            continue;
        const Configuration config(mask, m);

        UnionFind uf(g.num_vertices());
        for (int e = 0; e < m; ++e)
            if ((mask >> e) & 1u)
                uf.unite(g.edges()[static_cast<std::size_t>(e)].first,
                         g.edges()[static_cast<std::size_t>(e)].second);
        Rational diff_part(0);
        for (int a = 0; a < n; ++a) {
            if (d.weights[static_cast<std::size_t>(a)].is_zero())
                continue;
            for (int b = 0; b < n; ++b) {
                const int same = uf.connected(a, b) ? 1 : 0;
                const int cross = uf.connected(a, g.top_vertex(b)) ? 1 : 0;
                if (same != cross)
                    diff_part += d.weights[static_cast<std::size_t>(a)] *
                                 d.weights[static_cast<std::size_t>(b)] * Rational(same - cross);
            }
        }
        expected_diff += w * diff_part;
        expected_identity += w * mean_identity_check(g, config, d);
    }
    if (expected_diff * Rational(2) != expected_identity)
        throw std::logic_error("mean_inequality_check: symmetrization identity failed");
    return expected_diff >= Rational(0);
}

struct UpperBoundReport {
    Rational difference;        // P(u<->v) - P(u<->v')
    Rational joint_disconnect;  // P(u </> u' and v </> v')
    bool inequality_ok = false; // |difference| <= joint_disconnect
    bool chain_applicable = false; // complete original, constant vector
    Rational single_disconnect; // P(u </> u')
    Rational chain_bound;       // (1-p)(1-p^3)^{n-1}
    bool chain_ok = false;      // joint <= single <= chain_bound
};

namespace detail {

// P(u </> u' and v </> v') by conditioning on the main component S of u:
// u' must avoid S; if v and v' both land in S they are connected (excluded),
// if exactly one does the other pair member sits outside S and is cut off,
// and if neither does, v </> v' must hold inside the graph induced on V \ S.
inline Rational joint_disconnect_dp(const BunkbedGraph& g, const EdgeProbabilityVector& p, int u,
                                    int v, int vertex_limit) {
    const int nv = g.num_vertices();
    const int up = g.symmetric_vertex(u);
    const int vp = g.symmetric_vertex(v);
    MainComponentTable table(nv, g.edges(), p.values, u, vertex_limit);
    Rational total(0);
    for (const auto& [mask, prob] : table.distribution().entries) {
        if ((mask >> up) & 1u)
            continue;
        const bool has_v = (mask >> v) & 1u;
        const bool has_vp = (mask >> vp) & 1u;
        if (has_v && has_vp)
            continue;
        if (has_v || has_vp) {
            total += prob;
            continue;
        }
        // v, v' both outside: percolate the complement independently.
        std::vector<int> remap(static_cast<std::size_t>(nv), -1);
        int count = 0;
        for (int w = 0; w < nv; ++w)
            if (((mask >> w) & 1u) == 0)
                remap[static_cast<std::size_t>(w)] = count++;
        std::vector<std::pair<int, int>> sub_edges;
        std::vector<Rational> sub_probs;
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            const auto [a, b] = g.edges()[e];
            if (remap[static_cast<std::size_t>(a)] >= 0 && remap[static_cast<std::size_t>(b)] >= 0) {
                sub_edges.emplace_back(remap[static_cast<std::size_t>(a)],
                                       remap[static_cast<std::size_t>(b)]);
                sub_probs.push_back(p.values[e]);
            }
        }
        MainComponentTable sub(count, sub_edges, sub_probs,
                               remap[static_cast<std::size_t>(v)], vertex_limit);
        total += prob * (Rational(1) - sub.prob_reaches(remap[static_cast<std::size_t>(vp)]));
    }
    return total;
}

} // namespace detail

// Verifies |P(u<->v) - P(u<->v')| <= P(u </> u' and v </> v'), and for a
// complete original graph under a constant vector the further chain through
// P(u </> u') <= (1-p)(1-p^3)^{n-1}. Uses full enumeration when the edge
// count permits, otherwise the DP route.
inline UpperBoundReport upper_bound_report(const BunkbedGraph& g, const EdgeProbabilityVector& p,
                                           int u, int v, int edge_limit = kDefaultEnumEdgeLimit,
                                           int vertex_limit = kDefaultDpVertexLimit) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    if (g.level(u) != 0 || g.level(v) != 0)
        throw std::invalid_argument("upper_bound_report: u and v must be bottom vertices");
    const int up = g.symmetric_vertex(u);
    const int vp = g.symmetric_vertex(v);

    UpperBoundReport report;
    const bool enumerable = g.num_edges() <= edge_limit;
    if (enumerable) {
        report.difference =
            prob_connected_enum(g, p, u, v, edge_limit) - prob_connected_enum(g, p, u, vp, edge_limit);
        report.joint_disconnect = prob_event_enum(
            g, p,
            [&](const Configuration& config) {
                UnionFind uf(g.num_vertices());
                for (int e = 0; e < g.num_edges(); ++e)
                    if (config.is_open(e))
                        uf.unite(g.edges()[static_cast<std::size_t>(e)].first,
                                 g.edges()[static_cast<std::size_t>(e)].second);
                return !uf.connected(u, up) && !uf.connected(v, vp);
            },
            edge_limit);
        report.single_disconnect = Rational(1) - prob_connected_enum(g, p, u, up, edge_limit);
    } else {
        MainComponentTable table(g.num_vertices(), g.edges(), p.values, u, vertex_limit);
        report.difference = table.prob_reaches(v) - table.prob_reaches(vp);
        report.joint_disconnect = detail::joint_disconnect_dp(g, p, u, v, vertex_limit);
        report.single_disconnect = Rational(1) - table.prob_reaches(up);
    }
    const Rational abs_diff =
        report.difference < Rational(0) ? -report.difference : report.difference;
    report.inequality_ok = abs_diff <= report.joint_disconnect;

    const int n = g.columns();
    bool constant = true;
    for (const auto& value : p.values)
        constant = constant && value == p.values.front();
    const bool complete =
        static_cast<int>(g.original().edges.size()) == n * (n - 1) / 2;
    report.chain_applicable = constant && complete && !p.values.empty();
    if (report.chain_applicable) {
        const Rational pe = p.values.front();
        report.chain_bound = (Rational(1) - pe) *
                             (Rational(1) - pe.pow(3)).pow(static_cast<unsigned long>(n - 1));
        report.chain_ok = report.joint_disconnect <= report.single_disconnect &&
                          report.single_disconnect <= report.chain_bound;
    }
    return report;
}

inline bool upper_bound_check(const BunkbedGraph& g, const EdgeProbabilityVector& p, int u, int v,
                              int edge_limit = kDefaultEnumEdgeLimit,
                              int vertex_limit = kDefaultDpVertexLimit) {
    const auto report = upper_bound_report(g, p, u, v, edge_limit, vertex_limit);
    return report.inequality_ok && (!report.chain_applicable || report.chain_ok);
}

struct SegmentReport {
    int n = 0;
    Rational closed_form;            // prod over all n verticals (1-p) * prod bottom p
    Rational enumerated_difference;  // engine value P(u<->v) - P(u<->v')
    bool enumeration_checked = false;
    bool match = false;
    std::string note;
};

// Line segment with n columns, u = bottom end, v = other bottom end. The
// difference P(u<->v) - P(u<->v') equals the event that every vertical edge
// is closed and the bottom path is fully open.
inline SegmentReport verify_segment(int n, const EdgeProbabilityVector& p,
                                    int edge_limit = kDefaultEnumEdgeLimit) {
    if (n < 2)
        throw std::invalid_argument("verify_segment: need n >= 2");
    const BunkbedGraph g(OriginalGraph::path(n));
    p.validate(static_cast<std::size_t>(g.num_edges()));

    SegmentReport report;
    report.n = n;
    report.note = "closed form multiplies the closure factors of all " + std::to_string(n) +
                  " vertical edges with the " + std::to_string(n - 1) +
                  " bottom retention factors; a variant with only " + std::to_string(n - 1) +
                  " vertical factors is rejected by the enumeration cross-check";
    Rational value(1);
    for (int c = 0; c < n; ++c)
        value *= Rational(1) - p.values[static_cast<std::size_t>(g.vertical_edge(c))];
    for (int e = 0; e + 1 < n; ++e)
        value *= p.values[static_cast<std::size_t>(e)];
    report.closed_form = value;

    if (g.num_edges() <= edge_limit && n <= 6) {
        const int u = 0, v = n - 1;
        report.enumerated_difference =
            prob_connected_enum(g, p, u, v, edge_limit) -
            prob_connected_enum(g, p, u, g.symmetric_vertex(v), edge_limit);
        report.enumeration_checked = true;
        report.match = report.enumerated_difference == report.closed_form;
        if (!report.match)
            throw std::logic_error("verify_segment: closed form disagrees with enumeration");
    }
    return report;
}

inline Rational segment_difference(int n, const EdgeProbabilityVector& p,
                                   int edge_limit = kDefaultEnumEdgeLimit) {
    return verify_segment(n, p, edge_limit).closed_form;
}

} // namespace bunkbed
