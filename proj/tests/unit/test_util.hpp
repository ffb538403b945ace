#pragma once

#include "bunkbed/graph.hpp"
#include "bunkbed/rational.hpp"

#include <random>

namespace bunkbed::testutil {

inline Rational random_rational(std::mt19937_64& rng, int max_den = 16) {
    std::uniform_int_distribution<int> den(1, max_den);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(0, d);
    return Rational(num(rng), d);
}

inline EdgeProbabilityVector random_vector(const BunkbedGraph& g, std::mt19937_64& rng) {
    EdgeProbabilityVector p;
    p.values.reserve(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e)
        p.values.push_back(random_rational(rng));
    return p;
}

// Random vector with p_e = p_{e'}: top copies mirror the bottom copies.
inline EdgeProbabilityVector random_constrained_vector(const BunkbedGraph& g,
                                                       std::mt19937_64& rng) {
    EdgeProbabilityVector p;
    p.values.assign(static_cast<std::size_t>(g.num_edges()), Rational(0));
    for (int e = 0; e < g.num_edges(); ++e) {
        const int mate = g.symmetric_edge(e);
        if (mate < e)
            p.values[static_cast<std::size_t>(e)] = p.values[static_cast<std::size_t>(mate)];
        else
            p.values[static_cast<std::size_t>(e)] = random_rational(rng);
    }
    return p;
}

} // namespace bunkbed::testutil
