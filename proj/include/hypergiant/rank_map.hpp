#ifndef HYPERGIANT_RANK_MAP_HPP
#define HYPERGIANT_RANK_MAP_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hypergiant/combinat.hpp"

namespace hypergiant {

/**
 * Open-addressing hash map from Rank to V with linear probing.
 *
 * The all-ones rank is reserved as the empty marker; it is never a valid
 * colex rank because binom() rejects counts of 2^128 and above.
 * No erase: every consumer here only grows its map.
 */
template <class V>
class RankMap {
public:
    static constexpr Rank kEmpty = ~Rank{0};

    RankMap() { rehash(16); }
    explicit RankMap(std::size_t expected) { rehash(capacity_for(expected)); }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Returns {slot value, inserted}. A new value is value-initialized.
    std::pair<V*, bool> try_emplace(Rank key) {
        if ((size_ + 1) * 4 > keys_.size() * 3) rehash(keys_.size() * 2);
        std::size_t i = slot(key);
        while (keys_[i] != kEmpty) {
            if (keys_[i] == key) return {&values_[i], false};
            i = (i + 1) & mask_;
        }
        keys_[i] = key;
        values_[i] = V{};
        ++size_;
        return {&values_[i], true};
    }

    V& operator[](Rank key) { return *try_emplace(key).first; }

    const V* find(Rank key) const noexcept {
        std::size_t i = slot(key);
        while (keys_[i] != kEmpty) {
            if (keys_[i] == key) return &values_[i];
            i = (i + 1) & mask_;
        }
        return nullptr;
    }

    bool contains(Rank key) const noexcept { return find(key) != nullptr; }

    template <class Visit>
    void for_each(Visit&& visit) const {
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            if (keys_[i] != kEmpty) visit(keys_[i], values_[i]);
        }
    }

    /// (key, value) pairs sorted by key.
    std::vector<std::pair<Rank, V>> sorted_items() const {
        std::vector<std::pair<Rank, V>> out;
        out.reserve(size_);
        for_each([&](Rank k, const V& v) { out.emplace_back(k, v); });
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    static std::size_t capacity_for(std::size_t expected) {
        std::size_t cap = 16;
        while (cap * 3 < expected * 4 + 4) cap *= 2;
        return cap;
    }

    std::size_t slot(Rank key) const noexcept { return RankHash{}(key) & mask_; }

    void rehash(std::size_t capacity) {
        std::vector<Rank> old_keys(capacity, kEmpty);
        std::vector<V> old_values(capacity);
        old_keys.swap(keys_);
        old_values.swap(values_);
        mask_ = capacity - 1;
        size_ = 0;
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == kEmpty) continue;
            std::size_t s = slot(old_keys[i]);
            while (keys_[s] != kEmpty) s = (s + 1) & mask_;
            keys_[s] = old_keys[i];
            values_[s] = std::move(old_values[i]);
            ++size_;
        }
    }

    std::vector<Rank> keys_;
    std::vector<V> values_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

}  // namespace hypergiant

#endif  // HYPERGIANT_RANK_MAP_HPP
