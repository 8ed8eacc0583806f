#include "hypergiant/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace hypergiant {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

nlohmann::ordered_json count_value(Rank value) {
    if (value <= ~std::uint64_t{0}) return static_cast<std::uint64_t>(value);
    return to_string(value);
}

}  // namespace

std::int64_t ComponentCensus::excess() const {
    return static_cast<std::int64_t>(binom(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(j))) - 1;
}

std::optional<std::size_t> ComponentCensus::component_of(Rank j_set) const {
    auto it = std::lower_bound(covered_.begin(), covered_.end(), j_set);
    if (it == covered_.end() || *it != j_set) return std::nullopt;
    return component_index_[static_cast<std::size_t>(it - covered_.begin())];
}

std::vector<Rank> ComponentCensus::members(std::size_t index) const {
    std::vector<Rank> out;
    for (std::size_t i = 0; i < covered_.size(); ++i) {
        if (component_index_[i] == index) out.push_back(covered_[i]);
    }
    return out;
}

std::vector<std::vector<Rank>> ComponentCensus::partition() const {
    std::vector<std::vector<Rank>> out(components.size());
    for (std::size_t i = 0; i < covered_.size(); ++i) out[component_index_[i]].push_back(covered_[i]);
    return out;
}

ComponentCensus build_census(const EdgeSet& edges, int j, std::uint64_t max_covered) {
    const int k = edges.k;
    if (j < 1 || j > k - 1) throw std::invalid_argument("build_census: need 1 <= j <= k-1");
    const std::uint64_t per_edge = static_cast<std::uint64_t>(binom(static_cast<std::uint64_t>(k),
                                                                    static_cast<std::uint64_t>(j)));
    if (edges.size() * per_edge > max_covered) {
        throw std::length_error("build_census: " + std::to_string(edges.size()) + " edges exceed the covered j-set cap");
    }
    BinomTable table(edges.n, k);

    // j-subset ranks of every edge, edge-major
    std::vector<Rank> subsets;
    subsets.reserve(edges.size() * per_edge);
    for (Rank e : edges.edges) {
        VertexSet edge = colex_unrank(e, k, edges.n, table);
        visit_subsets(edge, j, [&](const VertexSet& sub) { subsets.push_back(colex_rank(sub, table)); });
    }

    ComponentCensus census;
    census.n = edges.n;
    census.k = k;
    census.j = j;
    census.covered_ = subsets;
    std::sort(census.covered_.begin(), census.covered_.end());
    census.covered_.erase(std::unique(census.covered_.begin(), census.covered_.end()), census.covered_.end());
    if (census.covered_.size() > std::uint64_t{0xffffffffu}) throw std::length_error("build_census: too many j-sets");

    auto index_of = [&](Rank r) {
        return static_cast<std::uint32_t>(std::lower_bound(census.covered_.begin(), census.covered_.end(), r) -
                                          census.covered_.begin());
    };
    DisjointSets sets(census.covered_.size());
    std::vector<std::uint32_t> edge_anchor(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        std::uint32_t first = index_of(subsets[e * per_edge]);
        edge_anchor[e] = first;
        for (std::uint64_t s = 1; s < per_edge; ++s) sets.unite(first, index_of(subsets[e * per_edge + s]));
    }

    // number roots by first appearance in rank order, so representatives are the minimal ranks
    std::vector<std::uint32_t> root_to_raw(census.covered_.size(), ~std::uint32_t{0});
    std::vector<Component> raw;
    std::vector<std::uint32_t> raw_index(census.covered_.size());
    for (std::uint32_t i = 0; i < census.covered_.size(); ++i) {
        std::uint32_t root = sets.find(i);
        if (root_to_raw[root] == ~std::uint32_t{0}) {
            root_to_raw[root] = static_cast<std::uint32_t>(raw.size());
            raw.push_back(Component{0, 0, 0, census.covered_[i]});
        }
        raw_index[i] = root_to_raw[root];
        ++raw[raw_index[i]].size;
    }
    for (std::uint32_t anchor : edge_anchor) ++raw[raw_index[anchor]].edge_count;

    const std::int64_t c = static_cast<std::int64_t>(per_edge) - 1;
    for (auto& comp : raw) {
        comp.nullity = 1 + c * static_cast<std::int64_t>(comp.edge_count) - static_cast<std::int64_t>(comp.size);
    }

    std::vector<std::uint32_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return raw[a].size > raw[b].size; });
    std::vector<std::uint32_t> final_index(raw.size());
    census.components.reserve(raw.size());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) {
        final_index[order[pos]] = pos;
        census.components.push_back(raw[order[pos]]);
    }
    census.component_index_.resize(census.covered_.size());
    for (std::size_t i = 0; i < census.covered_.size(); ++i) census.component_index_[i] = final_index[raw_index[i]];

    census.covered_jset_count = census.covered_.size();
    census.singleton_count = binom(edges.n, static_cast<std::uint64_t>(j)) - census.covered_jset_count;
    auto [first, second] = largest_two(census);
    census.largest = first;
    census.second_largest = second;
    return census;
}

std::int64_t nullity(const Component& component) { return component.nullity; }

std::int64_t total_nullity(const ComponentCensus& census) {
    std::int64_t total = 0;
    for (const auto& comp : census.components) total += comp.nullity;
    return total;
}

bool is_hypertree(const Component& component) { return component.nullity == 0; }

std::pair<std::uint64_t, std::uint64_t> largest_two(const ComponentCensus& census) {
    std::uint64_t first = 0;
    std::uint64_t second = 0;
    for (const auto& comp : census.components) {
        if (comp.size > first) {
            second = first;
            first = comp.size;
        } else if (comp.size > second) {
            second = comp.size;
        }
    }
    return {first, second};
}

std::string census_report_json(const ComponentCensus& census, int indent) {
    std::map<std::uint64_t, std::uint64_t> sizes;
    std::map<std::int64_t, std::uint64_t> nullities;
    std::uint64_t hypertrees = 0;
    for (const auto& comp : census.components) {
        ++sizes[comp.size];
        ++nullities[comp.nullity];
        if (is_hypertree(comp)) ++hypertrees;
    }
    nlohmann::ordered_json doc;
    doc["schema"] = "hypergiant.census/1";
    doc["n"] = census.n;
    doc["k"] = census.k;
    doc["j"] = census.j;
    doc["components"] = census.components.size();
    doc["covered_jsets"] = census.covered_jset_count;
    doc["singletons"] = count_value(census.singleton_count);
    doc["largest"] = census.largest;
    doc["second_largest"] = census.second_largest;
    doc["total_nullity"] = total_nullity(census);
    doc["hypertrees"] = hypertrees;
    auto& size_hist = doc["size_histogram"] = nlohmann::ordered_json::array();
    for (auto [size, count] : sizes) size_hist.push_back({size, count});
    auto& nullity_hist = doc["nullity_histogram"] = nlohmann::ordered_json::array();
    for (auto [nu, count] : nullities) nullity_hist.push_back({nu, count});
    return doc.dump(indent);
}

}  // namespace hypergiant
