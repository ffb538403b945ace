#pragma once

// Reconstructs P(u<->v) and P(u<->v') on the K_n bunkbed from the per-class
// decomposition sum C * P * (1-p)^B, checks it against the direct engine
// value, re-derives the difference through the (k, i, eps, z) regrouping,
// checks the partition of unity, sweeps the crossover-anchor comparisons, and
// searches the p grid for the empirical threshold of the argument.
//
// u and v are fixed as columns 0 and 1; vertex-transitivity of K_n makes the
// choice immaterial.

#include "bunkbed/component_prob.hpp"
#include "bunkbed/counting.hpp"
#include "bunkbed/exact.hpp"
#include "bunkbed/graph.hpp"
#include "bunkbed/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bunkbed {

// Memoizes P(x,y,z) for one (n, p); P is symmetric in (x, y) so keys are
// normalized with the larger count first.
class ClassProbCache {
public:
    ClassProbCache(int n, Rational p, int vertex_limit = kDefaultDpVertexLimit)
        : n_(n), p_(std::move(p)), limit_(vertex_limit) {}

    const Rational& class_prob(const Triplet& t) {
        require_valid(n_, t);
        const int hi = std::max(t.x, t.y);
        const int lo = std::min(t.x, t.y);
        const std::array<int, 3> key{hi, lo, t.z};
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, prob_connected_xyz(n_, Triplet{hi, lo, t.z}, p_, limit_)).first;
        return it->second;
    }

    Rational weighted(const Triplet& t) {
        const BigInt b = boundary_count(n_, t);
        return class_prob(t) * (Rational(1) - p_).pow(b.convert_to<unsigned long>());
    }

    int n() const { return n_; }
    const Rational& p() const { return p_; }

private:
    int n_;
    Rational p_;
    int limit_;
    std::map<std::array<int, 3>, Rational> cache_;
};

enum class ConnectionTarget { kSameLevel, kOppositeLevel }; // v vs v'

struct ClassTermRow {
    Triplet t;
    BigInt c1, c2;
    Rational class_prob;
    BigInt boundary;
    Rational term_v, term_vprime;
};

struct DecompositionReport {
    int n = 0;
    Rational p;
    Rational direct_v, decomposed_v;
    Rational direct_vprime, decomposed_vprime;
    Rational difference;           // decomposed_v - decomposed_vprime
    Rational regrouped_difference; // bottom-only classes + sum of C_diff terms
    bool z0_opposite_mass_zero = true;
    std::vector<ClassTermRow> rows;

    const Rational& lhs_direct(ConnectionTarget target) const {
        return target == ConnectionTarget::kSameLevel ? direct_v : direct_vprime;
    }
    const Rational& lhs_decomposed(ConnectionTarget target) const {
        return target == ConnectionTarget::kSameLevel ? decomposed_v : decomposed_vprime;
    }
    bool exact() const {
        return direct_v == decomposed_v && direct_vprime == decomposed_vprime &&
               regrouped_difference == difference && z0_opposite_mass_zero;
    }
};

inline DecompositionReport decompose(int n, const Rational& p,
                                     int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 2)
        throw std::invalid_argument("decompose: need n >= 2 so that u != v");
    if (p < Rational(0) || p > Rational(1))
        throw std::invalid_argument("decompose: p outside [0,1]");

    DecompositionReport report;
    report.n = n;
    report.p = p;

    const BunkbedGraph graph(OriginalGraph::complete(n));
    const auto probs = EdgeProbabilityVector::constant(
        static_cast<std::size_t>(graph.num_edges()), p);
    MainComponentTable table(graph.num_vertices(), graph.edges(), probs.values, 0, vertex_limit);
    report.direct_v = table.prob_reaches(1);
    report.direct_vprime = table.prob_reaches(graph.top_vertex(1));

    ClassProbCache cache(n, p, vertex_limit);
    const Rational closed = Rational(1) - p;

    Rational sum_v(0), sum_vprime(0);
    auto add_row = [&](const Triplet& t) {
        ClassTermRow row;
        row.t = t;
        row.c1 = count_c1(n, t);
        row.c2 = count_c2(n, t);
        row.class_prob = cache.class_prob(t);
        row.boundary = boundary_count(n, t);
        const Rational weight =
            row.class_prob * closed.pow(row.boundary.convert_to<unsigned long>());
        row.term_v = Rational(row.c1) * weight;
        row.term_vprime = Rational(row.c2) * weight;
        sum_v += row.term_v;
        sum_vprime += row.term_vprime;
        if (t.z == 0 && t.y >= 1 && !(Rational(row.c2) * row.class_prob).is_zero())
            report.z0_opposite_mass_zero = false;
        report.rows.push_back(std::move(row));
    };

    // z outer, then (k, i, eps); mirrors emitted next to their x >= y twin.
    for (int z = 0; z <= n; ++z) {
        for (int k = z; 2 * k - z <= n; ++k) {
            const int i_max = k - z;
            for (int i = 0; i <= i_max; ++i) {
                for (int eps = 0; eps <= 1; ++eps) {
                    const Triplet t{k + i + eps, k - i, z};
                    if (t.x < 1 || !t.valid_for(n))
                        continue;
                    add_row(t);
                    if (t.x != t.y && t.y >= 1)
                        add_row(Triplet{t.y, t.x, t.z});
                }
            }
        }
    }
    report.decomposed_v = sum_v;
    report.decomposed_vprime = sum_vprime;
    report.difference = sum_v - sum_vprime;

    // Regrouped difference: bottom-only classes feed the v side alone, then
    // the mirrored-pair C_diff terms over z >= 1.
    Rational regrouped(0);
    for (int x = 2; x <= n; ++x) {
        const Triplet t{x, 0, 0};
        regrouped += Rational(count_c1(n, t)) * cache.weighted(t);
    }
    for (int z = 1; z <= n; ++z) {
        for (int eps = 0; eps <= 1; ++eps) {
            for (int k = z; 2 * k + eps - z <= n; ++k) {
                for (int i = 0; i <= k - z; ++i) {
                    const Triplet t{k + i + eps, k - i, z};
                    regrouped += Rational(count_cdiff(n, k, i, eps, z)) * cache.weighted(t);
                }
            }
        }
    }
    report.regrouped_difference = regrouped;
    return report;
}

// Stable interchange schema for the per-class rows.
inline void write_decomposition_csv(std::ostream& os, const DecompositionReport& report) {
    os << "n,p_num,p_den,x,y,z,C1,C2,P_num,P_den,B,term_num,term_den\n";
    for (const auto& row : report.rows) {
        const Rational term = row.term_v - row.term_vprime;
        os << report.n << ',' << report.p.numerator() << ',' << report.p.denominator() << ','
           << row.t.x << ',' << row.t.y << ',' << row.t.z << ',' << row.c1 << ',' << row.c2 << ','
           << row.class_prob.numerator() << ',' << row.class_prob.denominator() << ','
           << row.boundary << ',' << term.numerator() << ',' << term.denominator() << '\n';
    }
}

struct TheoremRow {
    Rational p;
    Rational difference;
    bool nonnegative = false;
};

struct TheoremCheckResult {
    int n = 0;
    std::vector<TheoremRow> rows;
    bool pass = false; // difference >= 0 at every p >= 1/2 in the list
};

inline TheoremCheckResult theorem_check(int n, const std::vector<Rational>& p_list,
                                        int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 2)
        throw std::invalid_argument("theorem_check: need n >= 2");
    TheoremCheckResult result;
    result.n = n;
    result.pass = true;
    const BunkbedGraph graph(OriginalGraph::complete(n));
    const Rational half(1, 2);
    for (const auto& p : p_list) {
        const auto probs = EdgeProbabilityVector::constant(
            static_cast<std::size_t>(graph.num_edges()), p);
        MainComponentTable table(graph.num_vertices(), graph.edges(), probs.values, 0,
                                 vertex_limit);
        TheoremRow row;
        row.p = p;
        row.difference = table.prob_reaches(1) - table.prob_reaches(graph.top_vertex(1));
        row.nonnegative = row.difference >= Rational(0);
        if (p >= half && !row.nonnegative)
            result.pass = false;
        result.rows.push_back(std::move(row));
    }
    return result;
}

// sum over all classes of count_total * P * (1-p)^B == 1: the main component
// of u is exactly one classified subgraph.
inline bool partition_check(int n, const Rational& p, int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 1)
        throw std::invalid_argument("partition_check: need n >= 1");
    ClassProbCache cache(n, p, vertex_limit);
    Rational sum(0);
    for (int x = 1; x <= n; ++x)
        for (int y = 0; y <= n; ++y)
            for (int z = 0; z <= std::min(x, y); ++z) {
                const Triplet t{x, y, z};
                if (!t.valid_for(n))
                    continue;
                sum += Rational(count_total(n, t)) * cache.weighted(t);
            }
    return sum == Rational(1);
}

struct Lemma32Violation {
    int k = 0, z = 0, eps = 0, i = 0;
    std::string kind; // "sign" or "value"
};

struct Lemma32Report {
    int n = 0;
    Rational p;
    long cells = 0;
    long comparisons = 0;
    std::vector<Lemma32Violation> violations;
    std::string note;
    bool pass() const { return violations.empty(); }
};

// For every (k, z >= 1, eps) cell, computes the crossover index i0 and checks
// that the C_diff sign and the (1-p)^B * P anchor comparisons hold on both
// sides of it.
inline Lemma32Report lemma32_check(int n, const Rational& p,
                                   int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 1)
        throw std::invalid_argument("lemma32_check: need n >= 1");
    Lemma32Report report;
    report.n = n;
    report.p = p;
    report.note = "anchor comparisons use the exponent B on both sides; the "
                  "single-factor (1-p) variant of the first display is rejected "
                  "as a transcription slip";
    ClassProbCache cache(n, p, vertex_limit);
    for (int z = 1; z <= n; ++z) {
        for (int eps = 0; eps <= 1; ++eps) {
            for (int k = z; 2 * k + eps - z <= n; ++k) {
                ++report.cells;
                const int i0 = find_i0(k, eps, z);
                const Rational anchor = cache.weighted(Triplet{k + i0 + eps, k - i0, z});
                for (int i = 0; i <= k - z; ++i) {
                    ++report.comparisons;
                    const int sgn = cdiff_sign(n, k, i, eps, z);
                    if (i < i0 ? sgn >= 0 : sgn < 0)
                        report.violations.push_back({k, z, eps, i, "sign"});
                    const Rational value = cache.weighted(Triplet{k + i + eps, k - i, z});
                    if (i < i0 ? value > anchor : value < anchor)
                        report.violations.push_back({k, z, eps, i, "value"});
                }
            }
        }
    }
    return report;
}

struct ThresholdRow {
    Rational p;
    bool lemma_pass = false;
    Rational difference;
    bool difference_nonnegative = false;
};

struct ThresholdResult {
    int n = 0;
    Rational step;
    std::optional<Rational> lemma_threshold;    // smallest grid p with zero violations
    std::optional<Rational> theorem_threshold;  // smallest grid p with difference >= 0
    std::vector<ThresholdRow> rows;
};

inline ThresholdResult threshold_search(int n, const Rational& step,
                                        int vertex_limit = kDefaultDpVertexLimit) {
    if (n < 2)
        throw std::invalid_argument("threshold_search: need n >= 2");
    if (step <= Rational(0) || step > Rational(1))
        throw std::invalid_argument("threshold_search: step must be in (0,1]");
    ThresholdResult result;
    result.n = n;
    result.step = step;
    const BunkbedGraph graph(OriginalGraph::complete(n));
    for (Rational p(0); p <= Rational(1); p += step) {
        ThresholdRow row;
        row.p = p;
        row.lemma_pass = lemma32_check(n, p, vertex_limit).pass();
        const auto probs = EdgeProbabilityVector::constant(
            static_cast<std::size_t>(graph.num_edges()), p);
        MainComponentTable table(graph.num_vertices(), graph.edges(), probs.values, 0,
                                 vertex_limit);
        row.difference = table.prob_reaches(1) - table.prob_reaches(graph.top_vertex(1));
        row.difference_nonnegative = row.difference >= Rational(0);
        if (row.lemma_pass && !result.lemma_threshold)
            result.lemma_threshold = p;
        if (row.difference_nonnegative && !result.theorem_threshold)
            result.theorem_threshold = p;
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace bunkbed
