#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/vertex_set.hpp"

namespace hypermatch {

/// Largest supported vertex universe.
inline constexpr std::uint32_t kMaxVertices = 1024;

/// Largest n for which the complete hypergraph (all 2^n - 1 edges) may be
/// materialized in memory.
inline constexpr std::uint32_t kMaxCompleteVertices = 24;

/// A hypergraph on vertices [1..n] with a duplicate-free collection of
/// nonempty edges, kept in canonical order (popcount, then bit pattern).
/// Immutable after construction; safe to share across threads.
class Hypergraph {
public:
    Hypergraph(std::uint32_t n, std::vector<VertexSet> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 1) throw ParameterError("vertex count must be at least 1");
        if (n_ > kMaxVertices) throw CapacityError("vertex count exceeds the configured cap");
        if (edges_.empty()) throw ParameterError("edge count must be at least 1");
        const std::size_t wc = (n_ + 63) / 64;
        for (const VertexSet& e : edges_) {
            if (e.universe() != n_ || e.word_count() != wc)
                throw ParameterError("edge built over a different vertex universe");
            if (e.empty()) throw ParameterError("edges must be nonempty");
        }
        std::sort(edges_.begin(), edges_.end(), canonical_edge_less);
        for (std::size_t i = 1; i < edges_.size(); ++i) {
            if (edges_[i] == edges_[i - 1]) throw ParameterError("duplicate edge");
        }
    }

    std::uint32_t vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return edges_.size(); }
    const std::vector<VertexSet>& edges() const { return edges_; }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }

    /// Index of `e` in canonical order, if present.
    std::optional<std::uint32_t> find_edge(const VertexSet& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e, canonical_edge_less);
        if (it != edges_.end() && *it == e)
            return static_cast<std::uint32_t>(it - edges_.begin());
        return std::nullopt;
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const Hypergraph& a, const Hypergraph& b) { return !(a == b); }

private:
    std::uint32_t n_;
    std::vector<VertexSet> edges_;
};

/// The hypergraph containing every nonempty subset of [1..n].
inline Hypergraph complete_hypergraph(std::uint32_t n) {
    if (n < 1) throw ParameterError("vertex count must be at least 1");
    if (n > kMaxCompleteVertices)
        throw CapacityError("complete hypergraph would exceed the materialization cap");
    const std::uint32_t total = (std::uint32_t{1} << n) - 1;
    std::vector<VertexSet> edges;
    edges.reserve(total);
    for (std::uint32_t pattern = 1; pattern <= total; ++pattern) {
        edges.push_back(VertexSet::from_words(n, {pattern}));
    }
    return Hypergraph(n, std::move(edges));
}

/// Number of vertices incident to at least one edge.
inline std::uint32_t support_size(const Hypergraph& h) {
    VertexSet support(h.vertex_count());
    for (const VertexSet& e : h.edges()) support |= e;
    return static_cast<std::uint32_t>(support.count());
}

} // namespace hypermatch
