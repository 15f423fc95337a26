#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hypermatch/errors.hpp"

namespace hypermatch {

/// A subset of the vertex universe [1..n], stored as a bit vector.
/// Vertex ids are 1-based at the API; bit v-1 of the word array holds
/// vertex v. Word count is fixed by the universe size, so all edges of
/// one hypergraph share the same layout. Immutable use after construction
/// is thread-safe.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::uint32_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet of(std::uint32_t universe, std::initializer_list<std::uint32_t> vertices) {
        VertexSet s(universe);
        for (std::uint32_t v : vertices) s.insert(v);
        return s;
    }

    static VertexSet of(std::uint32_t universe, const std::vector<std::uint32_t>& vertices) {
        VertexSet s(universe);
        for (std::uint32_t v : vertices) s.insert(v);
        return s;
    }

    /// Wraps raw words produced by the sampler. Bits above `universe` must be zero.
    static VertexSet from_words(std::uint32_t universe, std::vector<std::uint64_t> words) {
        VertexSet s;
        s.n_ = universe;
        s.words_ = std::move(words);
        return s;
    }

    std::uint32_t universe() const { return n_; }
    std::size_t word_count() const { return words_.size(); }
    const std::vector<std::uint64_t>& words() const { return words_; }

    bool contains(std::uint32_t v) const {
        std::uint32_t b = v - 1;
        return v >= 1 && v <= n_ && (words_[b / 64] >> (b % 64)) & 1u;
    }

    void insert(std::uint32_t v) {
        if (v < 1 || v > n_) throw ParameterError("vertex id out of range [1..n]");
        std::uint32_t b = v - 1;
        words_[b / 64] |= std::uint64_t{1} << (b % 64);
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w != 0) return false;
        return true;
    }

    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    /// Removes every vertex of `o` from this set.
    VertexSet& subtract(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    /// Smallest contained vertex id; 0 when empty.
    std::uint32_t lowest() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] != 0)
                return static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]) + 1);
        return 0;
    }

    std::vector<std::uint32_t> vertices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w) + 1));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Canonical edge order: by popcount, then by numeric value of the bit
/// pattern (most significant word first). Keeps serialization and golden
/// files stable.
inline bool canonical_edge_less(const VertexSet& a, const VertexSet& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = wa.size(); i-- > 0;) {
        if (wa[i] != wb[i]) return wa[i] < wb[i];
    }
    return false;
}

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull ^ s.universe();
        for (std::uint64_t w : s.words()) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace hypermatch
