#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

namespace io_detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_u64(std::string_view tok, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

} // namespace io_detail

/// Instance format: line 1 is "n M"; then exactly M lines, each the sorted
/// 1-based vertex ids of one edge separated by spaces. LF line endings.
inline std::string serialize_instance(const Hypergraph& h) {
    std::string out;
    out += std::to_string(h.vertex_count());
    out += ' ';
    out += std::to_string(h.edge_count());
    out += '\n';
    for (const VertexSet& e : h.edges()) {
        bool first = true;
        for (std::uint32_t v : e.vertices()) {
            if (!first) out += ' ';
            out += std::to_string(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

inline Hypergraph parse_instance(std::string_view text) {
    using io_detail::parse_u64;
    using io_detail::split_ws;

    std::vector<std::string_view> lines;
    {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t nl = text.find('\n', pos);
            if (nl == std::string_view::npos) {
                lines.push_back(text.substr(pos));
                pos = text.size();
            } else {
                std::string_view l = text.substr(pos, nl - pos);
                if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
                lines.push_back(l);
                pos = nl + 1;
            }
        }
    }

    if (lines.empty())
        throw ParseError(ParseError::Kind::MalformedHeader, "missing header line");

    auto header = split_ws(lines[0]);
    std::uint64_t n = 0, m = 0;
    if (header.size() != 2 || !parse_u64(header[0], n) || !parse_u64(header[1], m))
        throw ParseError(ParseError::Kind::MalformedHeader,
                         "header must be two integers \"n M\"");
    if (n < 1 || m < 1)
        throw ParseError(ParseError::Kind::MalformedHeader, "n and M must be at least 1");
    if (n > kMaxVertices) throw CapacityError("vertex count exceeds the configured cap");
    if (n < 64 && m > ((std::uint64_t{1} << n) - 1))
        throw ParseError(ParseError::Kind::MalformedHeader, "M exceeds 2^n - 1");

    if (lines.size() < 1 + m)
        throw ParseError(ParseError::Kind::MissingEdges,
                         "expected " + std::to_string(m) + " edge lines");
    for (std::size_t i = 1 + m; i < lines.size(); ++i) {
        if (!split_ws(lines[i]).empty())
            throw ParseError(ParseError::Kind::TrailingContent,
                             "unexpected content after the last edge");
    }

    std::vector<VertexSet> edges;
    edges.reserve(m);
    std::unordered_set<VertexSet, VertexSetHash> seen;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto toks = split_ws(lines[1 + i]);
        if (toks.empty())
            throw ParseError(ParseError::Kind::EmptyEdge,
                             "edge line " + std::to_string(i + 1) + " is empty");
        VertexSet e(static_cast<std::uint32_t>(n));
        std::uint64_t prev = 0;
        for (auto tok : toks) {
            std::uint64_t v = 0;
            if (!parse_u64(tok, v) || v < 1 || v > n)
                throw ParseError(ParseError::Kind::VertexOutOfRange,
                                 "vertex id out of range on edge line " + std::to_string(i + 1));
            if (v <= prev)
                throw ParseError(ParseError::Kind::UnsortedVertices,
                                 "vertex ids must be strictly increasing on edge line " +
                                     std::to_string(i + 1));
            e.insert(static_cast<std::uint32_t>(v));
            prev = v;
        }
        if (!seen.insert(e).second)
            throw ParseError(ParseError::Kind::DuplicateEdge,
                             "duplicate edge on line " + std::to_string(i + 1));
        edges.push_back(std::move(e));
    }

    return Hypergraph(static_cast<std::uint32_t>(n), std::move(edges));
}

} // namespace hypermatch
