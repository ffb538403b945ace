#pragma once

// Seeded sampling estimator for graphs beyond exact capacity. Randomness is
// counter-based (Philox 4x32-10): every draw is a pure function of
// (seed, sample index, draw counter), so estimates are bit-identical for a
// fixed seed regardless of worker count or scheduling. This is the one module
// where floating point is permitted.

#include "bunkbed/graph.hpp"
#include "bunkbed/parallel.hpp"
#include "bunkbed/union_find.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bunkbed {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    const std::uint64_t product0 = std::uint64_t{0xD2511F53u} * ctr[0];
    const std::uint64_t product1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
    const std::array<std::uint32_t, 4> next = {
        static_cast<std::uint32_t>(product1 >> 32) ^ ctr[1] ^ key[0],
        static_cast<std::uint32_t>(product1),
        static_cast<std::uint32_t>(product0 >> 32) ^ ctr[3] ^ key[1],
        static_cast<std::uint32_t>(product0)};
    ctr = next;
    key[0] += 0x9E3779B9u;
    key[1] += 0xBB67AE85u;
}

inline std::array<std::uint32_t, 4> philox_block(std::uint64_t seed, std::uint64_t stream,
                                                 std::uint32_t block) {
    std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(stream),
                                        static_cast<std::uint32_t>(stream >> 32), block,
                                        0x62756e6bu};
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                        static_cast<std::uint32_t>(seed >> 32)};
    for (int round = 0; round < 10; ++round)
        philox_round(ctr, key);
    return ctr;
}

} // namespace detail

// Uniform draws for one (seed, stream) pair; streams are sample indices.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buffer_ = detail::philox_block(seed_, stream_, block_++);
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
};

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct SampleTally {
    std::uint64_t positive = 0; // indicator or +1 outcomes
    std::uint64_t negative = 0; // -1 outcomes (difference estimator only)
};

template <class PerSample>
SampleTally run_samples(std::uint64_t samples, std::uint64_t seed, int workers, PerSample&& fn) {
    if (samples < 1)
        throw std::invalid_argument("monte carlo: need samples >= 1");
    if (workers < 1)
        workers = 1;
    const auto blocks = static_cast<std::size_t>(workers);
    std::vector<SampleTally> partial(blocks);
    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::uint64_t begin = samples * b / blocks;
        const std::uint64_t end = samples * (b + 1) / blocks;
        SampleTally local;
        for (std::uint64_t s = begin; s < end; ++s) {
            CounterRng rng(seed, s);
            fn(rng, local);
        }
        partial[b] = local;
    });
    SampleTally total;
    for (const auto& t : partial) {
        total.positive += t.positive;
        total.negative += t.negative;
    }
    return total;
}

inline std::vector<double> to_doubles(const EdgeProbabilityVector& p) {
    std::vector<double> out;
    out.reserve(p.values.size());
    for (const auto& v : p.values)
        out.push_back(v.to_double());
    return out;
}

} // namespace detail

// Coupled estimator of P(u<->v) - P(u<->v'): both indicators are evaluated on
// the same sampled configuration, which cancels most of the shared variance.
inline McEstimate estimate_difference(const BunkbedGraph& g, const EdgeProbabilityVector& p, int u,
                                      int v, std::uint64_t samples, std::uint64_t seed,
                                      int workers = 1) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    const auto pd = detail::to_doubles(p);
    const auto& edges = g.edges();
    const int vp = g.symmetric_vertex(v);

    const auto tally = detail::run_samples(
        samples, seed, workers, [&](CounterRng& rng, detail::SampleTally& local) {
            UnionFind uf(g.num_vertices());
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (rng.next_unit() < pd[e])
                    uf.unite(edges[e].first, edges[e].second);
            const int diff = (uf.connected(u, v) ? 1 : 0) - (uf.connected(u, vp) ? 1 : 0);
            if (diff > 0)
                ++local.positive;
            else if (diff < 0)
                ++local.negative;
        });

    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    const auto n = static_cast<double>(samples);
    est.estimate = (static_cast<double>(tally.positive) - static_cast<double>(tally.negative)) / n;
    const double second_moment =
        (static_cast<double>(tally.positive) + static_cast<double>(tally.negative)) / n;
    const double variance = std::max(0.0, second_moment - est.estimate * est.estimate);
    est.standard_error = std::sqrt(variance / n);
    return est;
}

inline McEstimate estimate_connection(const BunkbedGraph& g, const EdgeProbabilityVector& p, int a,
                                      int b, std::uint64_t samples, std::uint64_t seed,
                                      int workers = 1) {
    p.validate(static_cast<std::size_t>(g.num_edges()));
    const auto pd = detail::to_doubles(p);
    const auto& edges = g.edges();

    const auto tally = detail::run_samples(
        samples, seed, workers, [&](CounterRng& rng, detail::SampleTally& local) {
            UnionFind uf(g.num_vertices());
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (rng.next_unit() < pd[e])
                    uf.unite(edges[e].first, edges[e].second);
            if (uf.connected(a, b))
                ++local.positive;
        });

    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    const auto n = static_cast<double>(samples);
    est.estimate = static_cast<double>(tally.positive) / n;
    est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / n);
    return est;
}

} // namespace bunkbed
