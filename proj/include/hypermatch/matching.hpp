#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// A pairwise-disjoint sub-collection of a hypergraph's edges, stored as
/// indices into the owning hypergraph's canonical edge list.
struct Matching {
    std::vector<std::uint32_t> edge_indices;

    std::size_t size() const { return edge_indices.size(); }

    std::vector<VertexSet> edge_sets(const Hypergraph& h) const {
        std::vector<VertexSet> out;
        out.reserve(edge_indices.size());
        for (std::uint32_t i : edge_indices) out.push_back(h.edge(i));
        return out;
    }
};

/// True iff every listed edge is in `h` and all pairs are disjoint. The
/// empty list is a matching; an edge absent from `h` yields false, not an
/// error. A repeated edge intersects itself and yields false.
inline bool is_matching(const Hypergraph& h, std::span<const VertexSet> edges) {
    VertexSet used(h.vertex_count());
    for (const VertexSet& e : edges) {
        if (e.universe() != h.vertex_count()) return false;
        if (!h.find_edge(e)) return false;
        if (used.intersects(e)) return false;
        used |= e;
    }
    return true;
}

inline bool is_matching(const Hypergraph& h, const std::vector<VertexSet>& edges) {
    return is_matching(h, std::span<const VertexSet>(edges));
}

} // namespace hypermatch
