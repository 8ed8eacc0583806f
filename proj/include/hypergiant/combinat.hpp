#ifndef HYPERGIANT_COMBINAT_HPP
#define HYPERGIANT_COMBINAT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hypergiant {

/// Colexicographic rank of a vertex set; also used for exact counts.
using Rank = unsigned __int128;
using Vertex = std::uint32_t;

inline constexpr int kMaxArity = 8;

std::string to_string(Rank value);
/// Exact conversion to uint64; throws std::overflow_error if it does not fit.
std::uint64_t to_u64(Rank value);
double to_double(Rank value);

struct RankHash {
    std::size_t operator()(Rank r) const noexcept {
        auto lo = static_cast<std::uint64_t>(r);
        auto hi = static_cast<std::uint64_t>(r >> 64);
        std::uint64_t h = lo ^ (hi * 0x9e3779b97f4a7c15ULL);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

/**
 * Sorted set of distinct vertex labels, stored inline (at most kMaxArity).
 *
 * Houses j-sets, k-sets and the l-sets used for degree bookkeeping. The
 * checked constructors enforce strict increase and labels below the universe
 * size; `unchecked` is for hot paths that build sets from valid pieces.
 */
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vertices);

    /// Validates ordering and (if universe > 0) the label range.
    static VertexSet checked(std::span<const Vertex> vertices, Vertex universe = 0);
    static VertexSet unchecked(std::span<const Vertex> vertices) noexcept;

    int size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    Vertex operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }
    std::span<const Vertex> vertices() const noexcept {
        return {v_.data(), static_cast<std::size_t>(size_)};
    }
    const Vertex* begin() const noexcept { return v_.data(); }
    const Vertex* end() const noexcept { return v_.data() + size_; }

    bool contains(Vertex x) const noexcept;
    /// True iff every vertex of `sub` is in this set.
    bool contains_all(const VertexSet& sub) const noexcept;

    void push_back(Vertex x) noexcept { v_[static_cast<std::size_t>(size_++)] = x; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept;

private:
    std::array<Vertex, kMaxArity> v_{};
    int size_ = 0;
};

std::string to_string(const VertexSet& s);

/// Exact binomial coefficient; 0 when r > n. Throws std::overflow_error past 2^128-1.
Rank binom(std::uint64_t n, std::uint64_t r);

/// Cached C(v, r) for v < rows and r <= max_arity; falls back to binom() beyond.
class BinomTable {
public:
    BinomTable(Vertex universe, int max_arity);

    Rank operator()(Vertex v, int r) const {
        if (v < rows_) return table_[static_cast<std::size_t>(v) * stride_ + static_cast<std::size_t>(r)];
        return binom(v, static_cast<std::uint64_t>(r));
    }
    int max_arity() const noexcept { return static_cast<int>(stride_) - 1; }

private:
    std::vector<Rank> table_;
    Vertex rows_ = 0;
    std::size_t stride_ = 0;
};

/// rank = sum_i C(s[i], i+1).
Rank colex_rank(const VertexSet& s);
Rank colex_rank(const VertexSet& s, const BinomTable& table);

/// Inverse of colex_rank for sets of size r in [0, n). Throws std::out_of_range.
VertexSet colex_unrank(Rank rank, int r, Vertex n);
VertexSet colex_unrank(Rank rank, int r, Vertex n, const BinomTable& table);

/// Visits all r-subsets of s in colex order.
void for_each_subset(const VertexSet& s, int r, const std::function<void(const VertexSet&)>& visit);
std::vector<VertexSet> r_subsets(const VertexSet& s, int r);

/// Visits all k-supersets of j_set inside [0, n), in colex order of the added vertices
/// (which coincides with colex order of the k-sets themselves).
void for_each_superset(const VertexSet& j_set, Vertex n, int k,
                       const std::function<void(const VertexSet&)>& visit);
std::vector<VertexSet> k_supersets(const VertexSet& j_set, Vertex n, int k);

/// |a ∩ b| by merging the sorted lists.
int intersection_size(const VertexSet& a, const VertexSet& b) noexcept;

/// Templated visitors for hot loops (no std::function indirection).
template <class Visit>
void visit_subsets(const VertexSet& s, int r, Visit&& visit) {
    const int n = s.size();
    if (r < 0 || r > n) return;
    std::array<int, kMaxArity> idx{};
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        VertexSet sub;
        for (int i = 0; i < r; ++i) sub.push_back(s[idx[static_cast<std::size_t>(i)]]);
        visit(sub);
        // colex successor: bump the lowest position that can move, reset those below it
        int i = 0;
        while (i < r && (i + 1 < r ? idx[static_cast<std::size_t>(i)] + 1 == idx[static_cast<std::size_t>(i + 1)]
                                   : idx[static_cast<std::size_t>(i)] + 1 == n)) {
            ++i;
        }
        if (i >= r) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int t = 0; t < i; ++t) idx[static_cast<std::size_t>(t)] = t;
    }
}

template <class Visit>
void visit_supersets(const VertexSet& j_set, Vertex n, int k, Visit&& visit) {
    const int extra = k - j_set.size();
    if (extra < 0 || static_cast<std::uint64_t>(k) > n) return;
    if (extra == 0) {
        visit(j_set);
        return;
    }
    // combinations of outside vertices in colex order, held as labels
    std::array<Vertex, kMaxArity> add{};
    auto next_outside = [&](Vertex from) {
        Vertex x = from;
        while (x < n && j_set.contains(x)) ++x;
        return x;
    };
    Vertex x = next_outside(0);
    for (int i = 0; i < extra; ++i) {
        add[static_cast<std::size_t>(i)] = x;
        x = next_outside(x + 1);
    }
    if (add[static_cast<std::size_t>(extra - 1)] >= n) return;
    while (true) {
        VertexSet k_set;
        int a = 0;
        int b = 0;
        while (a < j_set.size() || b < extra) {
            if (b >= extra || (a < j_set.size() && j_set[a] < add[static_cast<std::size_t>(b)])) {
                k_set.push_back(j_set[a++]);
            } else {
                k_set.push_back(add[static_cast<std::size_t>(b++)]);
            }
        }
        visit(k_set);
        int i = 0;
        while (i < extra) {
            Vertex bumped = next_outside(add[static_cast<std::size_t>(i)] + 1);
            Vertex limit = (i + 1 < extra) ? add[static_cast<std::size_t>(i + 1)] : n;
            if (bumped < limit) {
                add[static_cast<std::size_t>(i)] = bumped;
                Vertex y = next_outside(0);
                for (int t = 0; t < i; ++t) {
                    add[static_cast<std::size_t>(t)] = y;
                    y = next_outside(y + 1);
                }
                break;
            }
            ++i;
        }
        if (i >= extra) return;
    }
}

}  // namespace hypergiant

#endif  // HYPERGIANT_COMBINAT_HPP
