// Slow, obviously-correct reference implementations used by the tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/randsrc.hpp"

namespace oracle {

using hypergiant::Rank;
using hypergiant::Vertex;
using hypergiant::VertexSet;

/// All r-subsets of [0, n) as sorted vertex lists, in lexicographic order.
inline std::vector<std::vector<Vertex>> all_subsets(Vertex n, int r) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, Vertex from) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = from; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Colex comparison straight from the definition: compare largest elements first.
inline bool colex_less(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline std::vector<Vertex> as_vector(const VertexSet& s) {
    return std::vector<Vertex>(s.begin(), s.end());
}

inline bool subset_of(const std::vector<Vertex>& small, const std::vector<Vertex>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::size_t common(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t n = 0;
    for (Vertex v : a) n += std::count(b.begin(), b.end(), v);
    return n;
}

/**
 * j-components from the walk definition: edges are linked when they share at
 * least j vertices, the link relation is closed transitively (Warshall), and
 * two covered j-sets are together iff some edges containing them are linked.
 * Returns the nontrivial components as sorted lists of j-set ranks.
 */
inline std::set<std::vector<Rank>> walk_partition(const hypergiant::EdgeSet& edges, int j) {
    const std::size_t m = edges.size();
    std::vector<std::vector<Vertex>> sets;
    for (std::size_t i = 0; i < m; ++i) sets.push_back(as_vector(edges.edge(i)));
    std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) reach[a][b] = common(sets[a], sets[b]) >= static_cast<std::size_t>(j);
    }
    for (std::size_t via = 0; via < m; ++via) {
        for (std::size_t a = 0; a < m; ++a) {
            if (!reach[a][via]) continue;
            for (std::size_t b = 0; b < m; ++b) reach[a][b] = reach[a][b] || reach[via][b];
        }
    }
    std::set<std::vector<Rank>> out;
    std::vector<char> done(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        if (done[a]) continue;
        std::set<Rank> members;
        for (std::size_t b = 0; b < m; ++b) {
            if (!reach[a][b]) continue;
            done[b] = 1;
            for (const auto& sub : all_subsets(static_cast<Vertex>(sets[b].size()), j)) {
                std::vector<Vertex> js;
                for (Vertex idx : sub) js.push_back(sets[b][idx]);
                members.insert(hypergiant::colex_rank(VertexSet::unchecked(js)));
            }
        }
        out.insert(std::vector<Rank>(members.begin(), members.end()));
    }
    return out;
}

/// Rank-keyed random k-uniform hypergraph with independent Bernoulli(p) edges.
inline hypergiant::EdgeSet bernoulli_hypergraph(Vertex n, int k, double p, hypergiant::SeededStream& stream) {
    std::vector<Rank> ranks;
    const Rank total = hypergiant::binom(n, static_cast<std::uint64_t>(k));
    for (Rank r = 0; r < total; ++r) {
        if (stream.bernoulli(p)) ranks.push_back(r);
    }
    return hypergiant::EdgeSet::from_ranks(n, k, std::move(ranks));
}

}  // namespace oracle
