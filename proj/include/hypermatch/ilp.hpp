#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// LP-file text for the set-packing integer program: maximize the number of
/// chosen edges subject to each vertex appearing in at most one chosen edge,
/// all variables binary. Variable x<i> is edge i in canonical order;
/// constraint v<s> is vertex s. Vertices incident to no edge produce no row
/// (their constraint is vacuous and LP text cannot express an empty sum).
inline std::string export_ilp(const Hypergraph& h) {
    const auto& edges = h.edges();
    std::string out;
    out += "Maximize\n obj:";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out += (i == 0) ? " x" : " + x";
        out += std::to_string(i);
        if (i % 10 == 9 && i + 1 < edges.size()) out += "\n     ";
    }
    out += "\nSubject To\n";
    for (std::uint32_t v = 1; v <= h.vertex_count(); ++v) {
        std::vector<std::size_t> incident;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].contains(v)) incident.push_back(i);
        }
        if (incident.empty()) continue;
        out += " v" + std::to_string(v) + ":";
        for (std::size_t j = 0; j < incident.size(); ++j) {
            out += (j == 0) ? " x" : " + x";
            out += std::to_string(incident[j]);
            if (j % 10 == 9 && j + 1 < incident.size()) out += "\n     ";
        }
        out += " <= 1\n";
    }
    out += "Binary\n";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out += " x" + std::to_string(i) + "\n";
    }
    out += "End\n";
    return out;
}

} // namespace hypermatch
