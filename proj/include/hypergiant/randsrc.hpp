#ifndef HYPERGIANT_RANDSRC_HPP
#define HYPERGIANT_RANDSRC_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/rank_map.hpp"

namespace hypergiant {

/// Seeded 64-bit generator; (seed, stream_id) fixes the whole draw sequence.
class SeededStream {
public:
    using result_type = std::uint64_t;

    SeededStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    Rank below(Rank bound);
    bool bernoulli(double p) { return uniform01() < p; }

    /// Independent child stream derived from this one's identity (not its state).
    SeededStream substream(std::uint64_t child) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// Binomial(trials, p) draw, exact in distribution for any 64-bit trial count.
/// Inversion when trials*min(p,1-p) <= 30, transformed rejection (BTRS) otherwise.
std::uint64_t binomial_draw(SeededStream& stream, std::uint64_t trials, double p);

/// Edge set of a k-uniform hypergraph on [0, n): sorted, duplicate-free k-set ranks.
struct EdgeSet {
    Vertex n = 0;
    int k = 0;
    std::vector<Rank> edges;

    std::size_t size() const noexcept { return edges.size(); }
    bool contains(Rank k_set) const noexcept;
    VertexSet edge(std::size_t i) const { return colex_unrank(edges[i], k, n); }

    /// Canonicalizes (sorts, validates, rejects duplicates).
    static EdgeSet from_sets(Vertex n, int k, const std::vector<VertexSet>& sets);
    static EdgeSet from_ranks(Vertex n, int k, std::vector<Rank> ranks);
};

/// Text format: header "n k m", then one edge per line as sorted labels, in rank order.
void write_edge_set(std::ostream& out, const EdgeSet& edges);
EdgeSet read_edge_set(std::istream& in);

inline constexpr double kDefaultEdgeCap = 5.0e7;

/// H^k(n, p): edge count ~ Binomial(C(n,k), p), then that many distinct uniform ranks.
/// Throws std::length_error when p*C(n,k) exceeds max_expected_edges.
EdgeSet sample_hypergraph(Vertex n, int k, double p, SeededStream& stream,
                          double max_expected_edges = kDefaultEdgeCap);

/**
 * Memoized edge-status oracle over the k-sets of [0, n).
 *
 * Every k-set is revealed at most once; later queries return the stored
 * status. The lazy backend draws Bernoulli(p) on first reveal, the
 * presampled backend answers membership in a fixed EdgeSet. An oracle is a
 * single-owner object.
 */
class EdgeOracle {
public:
    static EdgeOracle presampled(EdgeSet edges);
    static EdgeOracle lazy(Vertex n, int k, double p, SeededStream stream);

    Vertex n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

    bool query(Rank k_set);
    /// Reveals and returns the status if k_set was unrevealed, std::nullopt otherwise.
    std::optional<bool> reveal_if_new(Rank k_set);
    bool is_revealed(Rank k_set) const noexcept { return revealed_.contains(k_set); }

    /// Number of distinct k-sets revealed so far.
    std::uint64_t query_count() const noexcept { return revealed_.size(); }
    /// Revealed k-sets that are edges.
    EdgeSet revealed_edges() const;

    void set_reveal_limit(std::uint64_t limit) noexcept { reveal_limit_ = limit; }

private:
    struct Presampled {
        EdgeSet edges;
    };
    struct Lazy {
        double p;
        SeededStream stream;
    };

    EdgeOracle(Vertex n, int k, std::variant<Presampled, Lazy> backend);
    bool draw(Rank k_set);

    Vertex n_;
    int k_;
    std::variant<Presampled, Lazy> backend_;
    RankMap<std::uint8_t> revealed_;
    std::uint64_t reveal_limit_ = std::uint64_t{1} << 32;
};

}  // namespace hypergiant

#endif  // HYPERGIANT_RANDSRC_HPP
