#pragma once

// Bunkbed graph construction. Two copies of an original graph (levels 0 and
// 1) joined by one vertical edge per column. Vertex and edge indexing is
// fixed so that configuration bitmasks and CSV output are stable across runs:
//   vertices: 0..n-1 bottom, n..2n-1 top
//   edges:    bottom copies in input order, then top copies, then verticals
//             by column.

#include "bunkbed/rational.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bunkbed {

struct OriginalGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    void validate() const {
        if (n_vertices <= 0)
            throw std::invalid_argument("OriginalGraph: need at least one vertex");
        std::set<std::pair<int, int>> seen;
        for (const auto& [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices)
                throw std::invalid_argument("OriginalGraph: edge endpoint out of range");
            if (a == b)
                throw std::invalid_argument("OriginalGraph: self-loop");
            if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
                throw std::invalid_argument("OriginalGraph: duplicate edge");
        }
    }

    static OriginalGraph complete(int n) {
        OriginalGraph g;
        g.n_vertices = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                g.edges.emplace_back(i, j);
        g.validate();
        return g;
    }

    static OriginalGraph path(int n) {
        OriginalGraph g;
        g.n_vertices = n;
        for (int i = 0; i + 1 < n; ++i)
            g.edges.emplace_back(i, i + 1);
        g.validate();
        return g;
    }

    // Plain-text edge list: first line "n m", then m lines "a b" (0-based).
    static OriginalGraph parse(std::istream& in) {
        OriginalGraph g;
        int m = -1;
        if (!(in >> g.n_vertices >> m) || m < 0)
            throw std::invalid_argument("OriginalGraph: expected header 'n m'");
        for (int i = 0; i < m; ++i) {
            int a, b;
            if (!(in >> a >> b))
                throw std::invalid_argument("OriginalGraph: truncated edge list");
            g.edges.emplace_back(a, b);
        }
        g.validate();
        return g;
    }

    // "complete:n", "path:n", or a filename holding an edge list.
    static OriginalGraph from_spec(const std::string& spec) {
        auto parse_n = [&](std::size_t prefix_len) {
            int n = 0;
            try {
                n = std::stoi(spec.substr(prefix_len));
            } catch (const std::exception&) {
                throw std::invalid_argument("OriginalGraph: bad generator '" + spec + "'");
            }
            return n;
        };
        if (spec.rfind("complete:", 0) == 0)
            return complete(parse_n(9));
        if (spec.rfind("path:", 0) == 0)
            return path(parse_n(5));
        std::ifstream in(spec);
        if (!in)
            throw std::invalid_argument("OriginalGraph: cannot open '" + spec + "'");
        return parse(in);
    }
};

class BunkbedGraph {
public:
    explicit BunkbedGraph(OriginalGraph original) : original_(std::move(original)) {
        original_.validate();
        const int n = original_.n_vertices;
        for (const auto& [a, b] : original_.edges)
            edges_.emplace_back(a, b);
        for (const auto& [a, b] : original_.edges)
            edges_.emplace_back(a + n, b + n);
        for (int c = 0; c < n; ++c)
            edges_.emplace_back(c, c + n);
    }

    const OriginalGraph& original() const { return original_; }
    int columns() const { return original_.n_vertices; }
    int num_vertices() const { return 2 * original_.n_vertices; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int level(int v) const { check_vertex(v); return v < columns() ? 0 : 1; }
    int column(int v) const { check_vertex(v); return v % columns(); }
    int bottom_vertex(int col) const { return col; }
    int top_vertex(int col) const { return col + columns(); }

    // Involution swapping levels: (x,i) -> (x,1-i).
    int symmetric_vertex(int v) const {
        check_vertex(v);
        return (v + columns()) % num_vertices();
    }

    // Horizontal edges map to the opposite level, verticals are fixed.
    int symmetric_edge(int e) const {
        const int m = static_cast<int>(original_.edges.size());
        if (e < 0 || e >= num_edges())
            throw std::invalid_argument("BunkbedGraph: edge index out of range");
        if (e < m)
            return e + m;
        if (e < 2 * m)
            return e - m;
        return e;
    }

    bool is_vertical_edge(int e) const {
        return e >= 2 * static_cast<int>(original_.edges.size()) && e < num_edges();
    }
    int vertical_edge(int col) const { return 2 * static_cast<int>(original_.edges.size()) + col; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= num_vertices())
            throw std::invalid_argument("BunkbedGraph: vertex index out of range");
    }

    OriginalGraph original_;
    std::vector<std::pair<int, int>> edges_;
};

inline BunkbedGraph build_bunkbed(const OriginalGraph& g) { return BunkbedGraph(g); }

// Per-edge retention probabilities, indexed like BunkbedGraph::edges().
struct EdgeProbabilityVector {
    std::vector<Rational> values;

    static EdgeProbabilityVector constant(std::size_t edge_count, const Rational& p) {
        EdgeProbabilityVector v;
        v.values.assign(edge_count, p);
        v.validate(edge_count);
        return v;
    }

    void validate(std::size_t edge_count) const {
        if (values.size() != edge_count)
            throw std::invalid_argument("EdgeProbabilityVector: size mismatch");
        for (const auto& p : values)
            if (p < Rational(0) || p > Rational(1))
                throw std::invalid_argument("EdgeProbabilityVector: value outside [0,1]");
    }
};

// True iff p_e = p_{e'} holds exactly for every edge.
inline bool validate_constrained(const BunkbedGraph& g, const EdgeProbabilityVector& p) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e)
        if (p.values[static_cast<std::size_t>(e)] !=
            p.values[static_cast<std::size_t>(g.symmetric_edge(e))])
            return false;
    return true;
}

// One open/closed assignment to all edges. Bit i is edge i; 1 = open.
struct Configuration {
    std::uint64_t bits = 0;
    int edge_count = 0;

    Configuration() = default;
    Configuration(std::uint64_t mask, int edges) : bits(mask), edge_count(edges) {
        if (edges < 0 || edges > 64)
            throw std::invalid_argument("Configuration: bit width must be in [0,64]");
        if (edges < 64 && (mask >> edges) != 0)
            throw std::invalid_argument("Configuration: mask wider than edge count");
    }

    bool is_open(int e) const {
        if (e < 0 || e >= edge_count)
            throw std::invalid_argument("Configuration: edge index out of range");
        return (bits >> e) & 1u;
    }
};

} // namespace bunkbed
