#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/rng.hpp"

namespace hypermatch {

namespace sample_detail {

/// Uniform nonempty n-bit pattern for n <= 64 (rejects the all-zero draw).
inline std::uint64_t draw_nonempty_u64(SplitMix64& rng, std::uint32_t n) {
    const std::uint64_t mask = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    for (;;) {
        std::uint64_t p = rng.next() & mask;
        if (p != 0) return p;
    }
}

struct WordsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& w) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::uint64_t x : w) h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

} // namespace sample_detail

/// Uniform sample from H(n, M): an M-subset of the nonempty subsets of [1..n],
/// drawn by i.i.d. pattern rejection (which makes the ordered sequence of
/// distinct patterns exchangeable, hence the set uniform). When M exceeds
/// half the pattern space and n <= 63, the complement set of size 2^n-1-M is
/// sampled instead, which is both exact and cheap near the complete graph.
/// Deterministic for a fixed seed.
inline Hypergraph sample_hypergraph(std::uint32_t n, std::uint64_t m, Seed seed) {
    if (n < 1) throw ParameterError("vertex count must be at least 1");
    if (n > kMaxVertices) throw CapacityError("vertex count exceeds the configured cap");
    if (m < 1) throw ParameterError("edge count must be at least 1");
    if (n <= 63 && m > ((std::uint64_t{1} << n) - 1))
        throw ParameterError("edge count exceeds 2^n - 1");

    SplitMix64 rng(seed);

    if (n <= 63) {
        const std::uint64_t total = (std::uint64_t{1} << n) - 1;
        if (m > total / 2) {
            // Complement sampling: pick the 2^n-1-M patterns to leave out.
            const std::uint64_t holes = total - m;
            std::unordered_set<std::uint64_t> excluded;
            excluded.reserve(static_cast<std::size_t>(holes * 2));
            while (excluded.size() < holes)
                excluded.insert(sample_detail::draw_nonempty_u64(rng, n));
            std::vector<VertexSet> edges;
            edges.reserve(static_cast<std::size_t>(m));
            for (std::uint64_t p = 1; p <= total; ++p) {
                if (!excluded.contains(p)) edges.push_back(VertexSet::from_words(n, {p}));
            }
            return Hypergraph(n, std::move(edges));
        }
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(static_cast<std::size_t>(m * 2));
        std::vector<VertexSet> edges;
        edges.reserve(static_cast<std::size_t>(m));
        while (chosen.size() < m) {
            std::uint64_t p = sample_detail::draw_nonempty_u64(rng, n);
            if (chosen.insert(p).second) edges.push_back(VertexSet::from_words(n, {p}));
        }
        return Hypergraph(n, std::move(edges));
    }

    // Wide universe: multi-word patterns, duplicate rejection only (the
    // pattern space is astronomically larger than any storable M).
    const std::size_t wc = (n + 63) / 64;
    const std::uint32_t top_bits = n % 64;
    const std::uint64_t top_mask =
        (top_bits == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    std::unordered_set<std::vector<std::uint64_t>, sample_detail::WordsHash> chosen;
    chosen.reserve(static_cast<std::size_t>(m * 2));
    std::vector<VertexSet> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (chosen.size() < m) {
        std::vector<std::uint64_t> w(wc);
        bool nonempty = false;
        for (std::size_t i = 0; i < wc; ++i) {
            w[i] = rng.next();
            if (i + 1 == wc) w[i] &= top_mask;
            nonempty |= (w[i] != 0);
        }
        if (!nonempty) continue;
        if (chosen.insert(w).second) edges.push_back(VertexSet::from_words(n, std::move(w)));
    }
    return Hypergraph(n, std::move(edges));
}

} // namespace hypermatch
