#ifndef HYPERGIANT_CENSUS_HPP
#define HYPERGIANT_CENSUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/randsrc.hpp"

namespace hypergiant {

/// A nontrivial j-component: size counts j-sets, edge_count counts k-edges.
struct Component {
    std::uint64_t size = 0;
    std::uint64_t edge_count = 0;
    /// 1 + c * edge_count - size with c = C(k,j) - 1.
    std::int64_t nullity = 0;
    /// Smallest j-set rank in the component (a stable identity).
    Rank representative = 0;
};

/**
 * Partition of the j-sets of a hypergraph into j-components.
 *
 * Only j-sets covered by some edge are stored; the remaining C(n,j) minus
 * covered j-sets are singleton components and are only counted. Components
 * are ordered by size descending, ties by representative rank.
 */
class ComponentCensus {
public:
    Vertex n = 0;
    int k = 0;
    int j = 0;
    std::vector<Component> components;
    std::uint64_t covered_jset_count = 0;
    Rank singleton_count = 0;
    std::uint64_t largest = 0;
    std::uint64_t second_largest = 0;

    /// C(k,j) - 1, the number of new j-sets a fresh edge can contribute.
    std::int64_t excess() const;

    /// Index into `components` of a covered j-set, std::nullopt for singletons.
    std::optional<std::size_t> component_of(Rank j_set) const;
    /// Sorted j-set ranks of component `index`.
    std::vector<Rank> members(std::size_t index) const;
    /// Member lists of all nontrivial components, in component order.
    std::vector<std::vector<Rank>> partition() const;

private:
    friend ComponentCensus build_census(const EdgeSet& edges, int j, std::uint64_t max_covered);

    std::vector<Rank> covered_;                 // sorted covered j-set ranks
    std::vector<std::uint32_t> component_index_;  // parallel to covered_
};

inline constexpr std::uint64_t kDefaultCoveredCap = std::uint64_t{1} << 28;

/// Union-find over the j-subsets of every edge.
ComponentCensus build_census(const EdgeSet& edges, int j, std::uint64_t max_covered = kDefaultCoveredCap);

std::int64_t nullity(const Component& component);
/// Sum of component nullities; equals |C| + c|E| - C(n,j) with singletons included.
std::int64_t total_nullity(const ComponentCensus& census);
bool is_hypertree(const Component& component);
std::pair<std::uint64_t, std::uint64_t> largest_two(const ComponentCensus& census);

/// JSON text: size and nullity histograms, largest two sizes, singleton count.
std::string census_report_json(const ComponentCensus& census, int indent = 2);

}  // namespace hypergiant

#endif  // HYPERGIANT_CENSUS_HPP
