#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/ilp.hpp"
#include "hypermatch/matching.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/solver.hpp"
#include "oracles.hpp"

using namespace hypermatch;

namespace {

Hypergraph from_lists(std::uint32_t n,
                      std::initializer_list<std::initializer_list<std::uint32_t>> lists) {
    std::vector<VertexSet> edges;
    for (auto l : lists) edges.push_back(VertexSet::of(n, l));
    return Hypergraph(n, std::move(edges));
}

std::vector<std::uint64_t> word_masks(const Hypergraph& h) {
    std::vector<std::uint64_t> out;
    for (const VertexSet& e : h.edges()) out.push_back(e.words()[0]);
    return out;
}

} // namespace

TEST_CASE("is_matching checks membership and pairwise disjointness", "[solver]") {
    const Hypergraph h = from_lists(3, {{1}, {2}, {1, 2}});
    REQUIRE(is_matching(h, {VertexSet::of(3, {1}), VertexSet::of(3, {2})}));
    REQUIRE_FALSE(is_matching(h, {VertexSet::of(3, {1, 2}), VertexSet::of(3, {2})}));
    REQUIRE(is_matching(h, std::vector<VertexSet>{}));
    // an edge absent from h is not an error, just false
    REQUIRE_FALSE(is_matching(h, {VertexSet::of(3, {3})}));
    // listing the same edge twice is self-intersecting
    REQUIRE_FALSE(is_matching(h, {VertexSet::of(3, {1}), VertexSet::of(3, {1})}));

    const Hypergraph shared = from_lists(4, {{1, 2}, {2, 3}});
    REQUIRE_FALSE(is_matching(shared, {VertexSet::of(4, {1, 2}), VertexSet::of(4, {2, 3})}));
}

TEST_CASE("brute force enumerates every edge subset", "[solver]") {
    REQUIRE(max_matching_bruteforce(from_lists(1, {{1}})).size() == 1);

    // every edge contains vertex 1, so any two intersect
    const Hypergraph star = from_lists(4, {{1}, {1, 2}, {1, 3}, {1, 2, 3, 4}});
    REQUIRE(max_matching_bruteforce(star).size() == 1);

    // complete n=4 restricted to edges of size >= 2
    const Hypergraph complete4 = complete_hypergraph(4);
    std::vector<VertexSet> big;
    for (const VertexSet& e : complete4.edges()) {
        if (e.count() >= 2) big.push_back(e);
    }
    REQUIRE(max_matching_bruteforce(Hypergraph(4, std::move(big))).size() == 2);

    REQUIRE_THROWS_AS(max_matching_bruteforce(sample_hypergraph(6, 23, Seed{1})), GuardError);
}

TEST_CASE("exact solver handles the worked instances", "[solver]") {
    REQUIRE(max_matching_exact(complete_hypergraph(3)).matching.size() == 3);
    REQUIRE(max_matching_exact(from_lists(4, {{1, 2}, {2, 3}, {3, 4}})).matching.size() == 2);

    const Hypergraph h = sample_hypergraph(9, 40, Seed{5});
    const SolveResult res = max_matching_exact(h);
    REQUIRE(is_matching(h, res.matching.edge_sets(h)));
    REQUIRE(res.stats.nodes_explored > 0);
    REQUIRE(res.stats.elapsed.count() >= 0.0);
}

TEST_CASE("exact solver agrees with the brute-force oracle", "[solver]") {
    SplitMix64 rng(0xFEEDFACE);
    for (int i = 0; i < 500; ++i) {
        const std::uint32_t n = 2 + rng.next() % 9;  // 2..10
        const std::uint64_t cap = std::min<std::uint64_t>(15, (std::uint64_t{1} << n) - 1);
        const std::uint64_t m = 1 + rng.next() % cap;
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        const SolveResult res = max_matching_exact(h);
        REQUIRE(res.matching.size() == max_matching_bruteforce(h).size());
        REQUIRE(is_matching(h, res.matching.edge_sets(h)));
    }
}

TEST_CASE("solver paths agree with each other", "[solver]") {
    SplitMix64 rng(0xC0FFEE);
    SolveOptions generic;
    generic.force_generic = true;
    SolveOptions raw;
    raw.preprocess = false;
    for (int i = 0; i < 120; ++i) {
        const std::uint32_t n = 2 + rng.next() % 11;  // 2..12, covers memo boundary cases
        const std::uint64_t cap = std::min<std::uint64_t>(30, (std::uint64_t{1} << n) - 1);
        const std::uint64_t m = 1 + rng.next() % cap;
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        const std::size_t reference = max_matching_exact(h).matching.size();
        REQUIRE(max_matching_exact(h, generic).matching.size() == reference);
        REQUIRE(max_matching_exact(h, raw).matching.size() == reference);
    }
    // a universe above 64 bits exercises the wide masks with a known optimum
    const Hypergraph wide =
        from_lists(70, {{1, 70}, {2, 65}, {1, 2}, {66, 67, 68}, {3}});
    REQUIRE(max_matching_exact(wide).matching.size() == 4);
}

TEST_CASE("adding an edge never shrinks the matching number", "[solver]") {
    SplitMix64 rng(0xBADA55);
    int grown = 0;
    for (int i = 0; i < 100; ++i) {
        const std::uint32_t n = 3 + rng.next() % 6;  // 3..8
        const std::uint64_t space = (std::uint64_t{1} << n) - 1;
        const std::uint64_t m = 1 + rng.next() % std::min<std::uint64_t>(space - 1, 12);
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        std::uint64_t pattern = 1 + rng.next() % space;
        std::vector<VertexSet> edges = h.edges();
        const VertexSet extra = VertexSet::from_words(n, {pattern});
        if (h.find_edge(extra)) continue;
        edges.push_back(extra);
        const std::size_t before = max_matching_exact(h).matching.size();
        const std::size_t after = max_matching_exact(Hypergraph(n, std::move(edges))).matching.size();
        REQUIRE(after >= before);
        grown += (after > before);
    }
    REQUIRE(grown > 0);  // the property test actually saw growth somewhere
}

TEST_CASE("every subset of a maximum matching is a matching", "[solver]") {
    const Hypergraph h = sample_hypergraph(10, 60, Seed{77});
    const Matching m = max_matching_exact(h).matching;
    const auto sets = m.edge_sets(h);
    REQUIRE(m.size() <= 10);
    for (std::uint32_t sub = 0; sub < (1u << m.size()); ++sub) {
        std::vector<VertexSet> part;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if ((sub >> i) & 1) part.push_back(sets[i]);
        }
        REQUIRE(is_matching(h, part));
    }
}

TEST_CASE("complete instances match every vertex", "[solver]") {
    for (std::uint32_t n = 1; n <= 16; ++n) {
        REQUIRE(max_matching_exact(complete_hypergraph(n)).matching.size() == n);
    }
}

TEST_CASE("node budget reports the best matching found", "[solver]") {
    const Hypergraph h = sample_hypergraph(12, 60, Seed{31});
    SolveOptions opt;
    opt.node_budget = 2;
    try {
        max_matching_exact(h, opt);
        FAIL("expected NodeBudgetError");
    } catch (const NodeBudgetError& e) {
        REQUIRE(e.best().size() >= 1);
        REQUIRE(is_matching(h, e.best().edge_sets(h)));
        REQUIRE(e.stats().nodes_explored >= 1);
    }
}

TEST_CASE("matching counter equals direct enumeration", "[solver]") {
    REQUIRE(count_matchings_of_size(complete_hypergraph(3), 2) == 6);
    // k = 1: every edge is a matching
    const Hypergraph h1 = sample_hypergraph(7, 29, Seed{2});
    REQUIRE(count_matchings_of_size(h1, 1) == h1.edge_count());
    // more than n disjoint nonempty sets cannot exist
    REQUIRE(count_matchings_of_size(h1, 8) == 0);
    REQUIRE(count_matchings_of_size(h1, 0) == 1);

    SplitMix64 rng(0x5EED);
    for (int i = 0; i < 40; ++i) {
        const std::uint32_t n = 3 + rng.next() % 5;
        const std::uint64_t m = 2 + rng.next() % 14;
        if (m > (std::uint64_t{1} << n) - 1) continue;
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        const unsigned k = 1 + static_cast<unsigned>(rng.next() % 4);
        REQUIRE(count_matchings_of_size(h, k) ==
                oracles::count_disjoint_subsets_enum(word_masks(h), k));
    }

    REQUIRE_THROWS_AS(count_matchings_of_size(sample_hypergraph(10, 400, Seed{3}), 7),
                      GuardError);
}

TEST_CASE("solving with and without preprocessing yields equal sizes", "[solver]") {
    SolveOptions raw;
    raw.preprocess = false;
    SplitMix64 rng(0xD15EA5E);
    for (int i = 0; i < 60; ++i) {
        const std::uint32_t n = 3 + rng.next() % 8;
        const std::uint64_t space = (std::uint64_t{1} << n) - 1;
        const std::uint64_t m = 1 + rng.next() % std::min<std::uint64_t>(space, 40);
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        REQUIRE(max_matching_exact(h).matching.size() ==
                max_matching_exact(h, raw).matching.size());
    }
    // dense case where superset removal is the whole story
    REQUIRE(max_matching_exact(complete_hypergraph(10), raw).matching.size() == 10);
}

TEST_CASE("LP export matches the documented layout", "[solver]") {
    const std::string two_singletons = export_ilp(from_lists(2, {{1}, {2}}));
    REQUIRE(two_singletons ==
            "Maximize\n"
            " obj: x0 + x1\n"
            "Subject To\n"
            " v1: x0 <= 1\n"
            " v2: x1 <= 1\n"
            "Binary\n"
            " x0\n"
            " x1\n"
            "End\n");

    const std::string shared = export_ilp(from_lists(3, {{1, 2}, {2, 3}}));
    REQUIRE(shared.find(" v2: x0 + x1 <= 1\n") != std::string::npos);
}

namespace {

/// Reconstructs edge masks from LP text: x<i> appears in row v<s> iff edge i
/// contains vertex s. Independent route from text back to an instance.
std::vector<std::uint64_t> masks_from_lp(const std::string& lp, std::size_t m) {
    std::vector<std::uint64_t> masks(m, 0);
    std::size_t pos = lp.find("Subject To");
    const std::size_t end = lp.find("Binary");
    REQUIRE(pos != std::string::npos);
    REQUIRE(end != std::string::npos);
    std::size_t line_start = lp.find('\n', pos) + 1;
    std::uint64_t vertex = 0;
    while (line_start < end) {
        std::size_t line_end = lp.find('\n', line_start);
        std::string line = lp.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        std::size_t c = line.find(" v");
        if (c == 0) {
            vertex = std::stoull(line.substr(2, line.find(':') - 2));
        }
        std::size_t x = 0;
        while ((x = line.find('x', x)) != std::string::npos) {
            const std::size_t idx = std::stoull(line.substr(x + 1));
            REQUIRE(idx < m);
            masks[idx] |= std::uint64_t{1} << (vertex - 1);
            x += 1;
        }
    }
    return masks;
}

} // namespace

TEST_CASE("LP text reconstructs to an instance with the same optimum", "[solver]") {
    SplitMix64 rng(0x11CE);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t n = 2 + rng.next() % 7;  // 2..8
        const std::uint64_t space = (std::uint64_t{1} << n) - 1;
        const std::uint64_t m = 1 + rng.next() % std::min<std::uint64_t>(space, 12);
        const Hypergraph h = sample_hypergraph(n, m, Seed{rng.next()});
        const auto masks = masks_from_lp(export_ilp(h), h.edge_count());
        REQUIRE(masks == word_masks(h));
        REQUIRE(oracles::max_disjoint_subset_enum(masks) ==
                max_matching_exact(h).matching.size());
    }
}
