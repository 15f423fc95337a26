#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/matching.hpp"

namespace hypermatch {

struct SolveOptions {
    std::uint64_t node_budget = 100'000'000;
    bool preprocess = true;
    /// Forces the generic multi-word search even for small universes.
    /// Exists so tests can exercise the wide path on instances whose
    /// optimum is independently known.
    bool force_generic = false;
};

struct SolveStats {
    std::uint64_t nodes_explored = 0;
    /// Subtrees cut by the incumbent bound, plus memo hits on the cached path.
    std::uint64_t prune_count = 0;
    std::chrono::duration<double> elapsed{0};
};

struct SolveResult {
    Matching matching;
    SolveStats stats;
};

/// Node budget exhausted. Carries the best matching found so far, which is
/// valid but not proven optimal.
class NodeBudgetError : public Error {
public:
    NodeBudgetError(Matching best, SolveStats stats)
        : Error("node budget exceeded; reporting best matching found so far"),
          best_(std::move(best)),
          stats_(stats) {}

    const Matching& best() const { return best_; }
    const SolveStats& stats() const { return stats_; }

private:
    Matching best_;
    SolveStats stats_;
};

namespace solver_detail {

struct BudgetSignal {};

/// Preprocessed instance: minimal non-singleton edges plus greedily taken
/// singletons.
struct Reduced {
    std::vector<VertexSet> edges;       // canonical order
    std::vector<std::uint32_t> orig;    // original index per reduced edge
    std::vector<std::uint32_t> forced;  // original indices of taken singletons
};

/// Superset removal: an edge strictly containing another edge can always be
/// exchanged for the contained one, so only minimal edges matter. Singleton
/// take: after superset removal no other edge touches a singleton's vertex,
/// so every singleton belongs to some maximum matching.
inline Reduced preprocess(const Hypergraph& h) {
    Reduced r;
    const auto& edges = h.edges();  // canonical: subsets precede supersets
    std::vector<std::uint32_t> kept;
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        bool dominated = false;
        for (std::uint32_t k : kept) {
            if (edges[k].subset_of(edges[i])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(i);
    }
    for (std::uint32_t k : kept) {
        if (edges[k].count() == 1) {
            r.forced.push_back(k);
        } else {
            r.edges.push_back(edges[k]);
            r.orig.push_back(k);
        }
    }
    return r;
}

inline Reduced passthrough(const Hypergraph& h) {
    Reduced r;
    r.edges = h.edges();
    r.orig.resize(r.edges.size());
    for (std::uint32_t i = 0; i < r.orig.size(); ++i) r.orig[i] = i;
    return r;
}

/// Memoized form of the vertex branch search for single-word universes with
/// n <= 20: identical branching, with exact subproblem values cached on the
/// available-vertex mask instead of incumbent pruning.
class MemoSolver {
public:
    MemoSolver(std::uint32_t n, const std::vector<VertexSet>& edges, std::uint64_t budget)
        : budget_(budget), memo_(std::size_t{1} << n, -1), inc_(n) {
        edges_.reserve(edges.size());
        for (const VertexSet& e : edges) edges_.push_back(e.words()[0]);
        for (std::uint32_t i = 0; i < edges_.size(); ++i) {
            std::uint64_t w = edges_[i];
            while (w) {
                inc_[static_cast<std::uint32_t>(std::countr_zero(w))].push_back(i);
                w &= w - 1;
            }
            support_ |= edges_[i];
        }
    }

    std::vector<std::uint32_t> solve(SolveStats& stats) {
        try {
            search(support_);
            std::vector<std::uint32_t> ids;
            std::uint64_t mask = support_;
            while (mask != 0) {
                const int want = search(mask);
                if (want == 0) break;
                const std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(mask));
                bool took = false;
                for (std::uint32_t e : inc_[v]) {
                    if ((edges_[e] & ~mask) == 0 && 1 + search(mask & ~edges_[e]) == want) {
                        ids.push_back(e);
                        mask &= ~edges_[e];
                        took = true;
                        break;
                    }
                }
                if (!took) mask &= ~(std::uint64_t{1} << v);
            }
            stats.nodes_explored += nodes_;
            stats.prune_count += memo_hits_;
            return ids;
        } catch (const BudgetSignal&) {
            stats.nodes_explored += nodes_;
            stats.prune_count += memo_hits_;
            throw;
        }
    }

private:
    int search(std::uint64_t mask) {
        if (mask == 0) return 0;
        if (memo_[mask] >= 0) {
            ++memo_hits_;
            return memo_[mask];
        }
        if (++nodes_ > budget_) throw BudgetSignal{};
        const std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(mask));
        int best = 0;
        for (std::uint32_t e : inc_[v]) {
            if ((edges_[e] & ~mask) == 0) {
                int cand = 1 + search(mask & ~edges_[e]);
                if (cand > best) best = cand;
            }
        }
        int skip = search(mask & ~(std::uint64_t{1} << v));
        if (skip > best) best = skip;
        memo_[static_cast<std::size_t>(mask)] = static_cast<std::int8_t>(best);
        return best;
    }

    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::uint64_t memo_hits_ = 0;
    std::uint64_t support_ = 0;
    std::vector<std::uint64_t> edges_;
    std::vector<std::int8_t> memo_;
    std::vector<std::vector<std::uint32_t>> inc_;
};

/// Word-array operations for the wide (n > 64) search. A single-word
/// specialization below keeps the common case on plain integers.
struct WideMask {
    std::vector<std::uint64_t> w;
};

/// Depth-first branch and bound over a mask type M. Branches on the lowest
/// vertex still coverable: either some remaining edge containing it is taken
/// (in canonical order) or the vertex is left unmatched. Prunes when the
/// chosen size plus the number of coverable vertices cannot beat the
/// incumbent.
template <class Ops>
class BranchAndBound {
    using M = typename Ops::Mask;

public:
    BranchAndBound(std::vector<M> edges, std::uint32_t n_vertices, std::uint64_t budget)
        : edges_(std::move(edges)), budget_(budget) {
        // Depth grows by one per branching step and each step removes at
        // least one coverable vertex, so n_vertices + 2 levels suffice.
        // Pre-sizing keeps references into live_ stable across recursion.
        live_.resize(n_vertices + 2);
        live_[0].resize(edges_.size());
        for (std::uint32_t i = 0; i < edges_.size(); ++i) live_[0][i] = i;
    }

    std::vector<std::uint32_t> solve(SolveStats& stats) {
        try {
            dfs(0, 0);
        } catch (const BudgetSignal&) {
            stats.nodes_explored += nodes_;
            stats.prune_count += prunes_;
            throw;
        }
        stats.nodes_explored += nodes_;
        stats.prune_count += prunes_;
        return best_;
    }

    const std::vector<std::uint32_t>& best_so_far() const { return best_; }

private:
    void dfs(std::size_t depth, std::size_t chosen) {
        if (++nodes_ > budget_) throw BudgetSignal{};
        if (chosen > best_.size()) best_.assign(stack_.begin(), stack_.end());

        const auto& live = live_[depth];
        if (live.empty()) return;

        M reach = Ops::empty(edges_[live[0]]);
        for (std::uint32_t e : live) Ops::or_into(reach, edges_[e]);
        if (chosen + Ops::popcount(reach) <= best_.size()) {
            ++prunes_;
            return;
        }

        const std::uint32_t v = Ops::lowest(reach);

        for (std::uint32_t e : live) {
            if (!Ops::contains(edges_[e], v)) continue;
            auto& child = live_[depth + 1];
            child.clear();
            for (std::uint32_t f : live) {
                if (f != e && Ops::disjoint(edges_[f], edges_[e])) child.push_back(f);
            }
            stack_.push_back(e);
            dfs(depth + 1, chosen + 1);
            stack_.pop_back();
        }

        auto& child = live_[depth + 1];
        child.clear();
        for (std::uint32_t f : live) {
            if (!Ops::contains(edges_[f], v)) child.push_back(f);
        }
        dfs(depth + 1, chosen);
    }

    std::vector<M> edges_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::uint64_t prunes_ = 0;
    std::vector<std::uint32_t> stack_;
    std::vector<std::uint32_t> best_;
    std::vector<std::vector<std::uint32_t>> live_;
};

struct U64Ops {
    using Mask = std::uint64_t;
    static Mask empty(const Mask&) { return 0; }
    static void or_into(Mask& a, const Mask& b) { a |= b; }
    static bool disjoint(const Mask& a, const Mask& b) { return (a & b) == 0; }
    static bool contains(const Mask& a, std::uint32_t v) { return (a >> v) & 1; }
    static std::size_t popcount(const Mask& a) { return static_cast<std::size_t>(std::popcount(a)); }
    static std::uint32_t lowest(const Mask& a) { return static_cast<std::uint32_t>(std::countr_zero(a)); }
};

struct WideOps {
    using Mask = WideMask;
    static Mask empty(const Mask& like) { return Mask{std::vector<std::uint64_t>(like.w.size(), 0)}; }
    static void or_into(Mask& a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i) a.w[i] |= b.w[i];
    }
    static bool disjoint(const Mask& a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            if (a.w[i] & b.w[i]) return false;
        return true;
    }
    static bool contains(const Mask& a, std::uint32_t v) { return (a.w[v / 64] >> (v % 64)) & 1; }
    static std::size_t popcount(const Mask& a) {
        std::size_t c = 0;
        for (std::uint64_t w : a.w) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    static std::uint32_t lowest(const Mask& a) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            if (a.w[i]) return static_cast<std::uint32_t>(i * 64 + std::countr_zero(a.w[i]));
        return 0;
    }
};

/// First-fit matching in canonical order; the budget-exhaustion fallback.
inline std::vector<std::uint32_t> greedy_ids(const std::vector<VertexSet>& edges,
                                             std::uint32_t n) {
    std::vector<std::uint32_t> ids;
    VertexSet used(n);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        if (!used.intersects(edges[i])) {
            used |= edges[i];
            ids.push_back(i);
        }
    }
    return ids;
}

/// Exact C(n, k), saturating once it exceeds `cap`, so callers can test
/// budget limits without big-integer arithmetic.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);  // product of i+1 consecutive integers divides evenly
        if (r > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

} // namespace solver_detail

/// Exact maximum-cardinality hyper-matching. The returned matching is valid
/// and of maximum size; on node-budget exhaustion a NodeBudgetError carries
/// the best matching found so far.
inline SolveResult max_matching_exact(const Hypergraph& h, const SolveOptions& opt = {}) {
    namespace sd = solver_detail;
    const auto t0 = std::chrono::steady_clock::now();
    SolveStats stats;
    sd::Reduced red = opt.preprocess ? sd::preprocess(h) : sd::passthrough(h);

    Matching base;
    base.edge_indices = red.forced;

    auto finish = [&](std::vector<std::uint32_t> reduced_ids) {
        Matching m = base;
        for (std::uint32_t r : reduced_ids) m.edge_indices.push_back(red.orig[r]);
        std::sort(m.edge_indices.begin(), m.edge_indices.end());
        stats.elapsed = std::chrono::steady_clock::now() - t0;
        return SolveResult{std::move(m), stats};
    };

    if (red.edges.empty()) return finish({});

    const std::uint32_t n = h.vertex_count();
    try {
        if (!opt.force_generic && n <= 20) {
            sd::MemoSolver solver(n, red.edges, opt.node_budget);
            return finish(solver.solve(stats));
        }
        if (!opt.force_generic && n <= 64) {
            std::vector<std::uint64_t> masks;
            masks.reserve(red.edges.size());
            for (const VertexSet& e : red.edges) masks.push_back(e.words()[0]);
            sd::BranchAndBound<sd::U64Ops> solver(std::move(masks), n, opt.node_budget);
            try {
                return finish(solver.solve(stats));
            } catch (const sd::BudgetSignal&) {
                auto r = finish(solver.best_so_far());
                throw NodeBudgetError(std::move(r.matching), r.stats);
            }
        }
        std::vector<sd::WideMask> masks;
        masks.reserve(red.edges.size());
        for (const VertexSet& e : red.edges) masks.push_back(sd::WideMask{e.words()});
        sd::BranchAndBound<sd::WideOps> solver(std::move(masks), n, opt.node_budget);
        try {
            return finish(solver.solve(stats));
        } catch (const sd::BudgetSignal&) {
            auto r = finish(solver.best_so_far());
            throw NodeBudgetError(std::move(r.matching), r.stats);
        }
    } catch (const sd::BudgetSignal&) {
        // Memoized path: no incumbent is tracked, fall back to first-fit.
        auto r = finish(sd::greedy_ids(red.edges, n));
        throw NodeBudgetError(std::move(r.matching), r.stats);
    }
}

/// Exhaustive check of every edge subset. Oracle for the exact solver.
inline Matching max_matching_bruteforce(const Hypergraph& h) {
    if (h.edge_count() > 22)
        throw GuardError("brute force enumerates 2^M subsets; M must be <= 22");
    const auto& edges = h.edges();
    std::vector<std::uint32_t> best, stack;
    VertexSet used(h.vertex_count());

    auto rec = [&](auto&& self, std::uint32_t idx) -> void {
        if (stack.size() > best.size()) best = stack;
        if (idx == edges.size()) return;
        if (!used.intersects(edges[idx])) {
            used |= edges[idx];
            stack.push_back(idx);
            self(self, idx + 1);
            stack.pop_back();
            used.subtract(edges[idx]);
        }
        self(self, idx + 1);
    };
    rec(rec, 0);
    return Matching{std::move(best)};
}

/// Number of k-subsets of edges that are pairwise disjoint (X_k realized on
/// a concrete sample). Refuses when C(M, k) exceeds the enumeration budget.
inline std::uint64_t count_matchings_of_size(const Hypergraph& h, std::uint64_t k,
                                             std::uint64_t budget = 10'000'000) {
    if (k == 0) return 1;
    if (k > h.vertex_count() || k > h.edge_count()) return 0;
    if (solver_detail::binomial_capped(h.edge_count(), k, budget) > budget)
        throw GuardError("C(M, k) exceeds the enumeration budget");

    const auto& edges = h.edges();
    const std::uint32_t m = static_cast<std::uint32_t>(edges.size());
    std::uint64_t count = 0;
    VertexSet used(h.vertex_count());

    auto rec = [&](auto&& self, std::uint32_t idx, std::uint64_t remaining) -> void {
        if (remaining == 0) {
            ++count;
            return;
        }
        if (m - idx < remaining) return;
        for (std::uint32_t i = idx; i + remaining <= m; ++i) {
            if (!used.intersects(edges[i])) {
                used |= edges[i];
                self(self, i + 1, remaining - 1);
                used.subtract(edges[i]);
            }
        }
    };
    rec(rec, 0, k);
    return count;
}

} // namespace hypermatch
