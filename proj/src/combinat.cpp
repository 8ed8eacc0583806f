#include "hypergiant/combinat.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hypergiant {

namespace {

Rank gcd_rank(Rank a, Rank b) {
    while (b != 0) {
        Rank t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::string to_string(Rank value) {
    if (value == 0) return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::uint64_t to_u64(Rank value) {
    if (value > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("count " + to_string(value) + " does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

double to_double(Rank value) {
    auto hi = static_cast<std::uint64_t>(value >> 64);
    auto lo = static_cast<std::uint64_t>(value);
    return static_cast<double>(hi) * 18446744073709551616.0 + static_cast<double>(lo);
}

VertexSet::VertexSet(std::initializer_list<Vertex> vertices)
    : VertexSet(checked(std::span<const Vertex>(vertices.begin(), vertices.size()))) {}

VertexSet VertexSet::checked(std::span<const Vertex> vertices, Vertex universe) {
    if (vertices.size() > static_cast<std::size_t>(kMaxArity)) {
        throw std::invalid_argument("vertex set larger than the supported arity " +
                                    std::to_string(kMaxArity));
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i > 0 && vertices[i] <= vertices[i - 1]) {
            throw std::invalid_argument("vertex set must be strictly increasing");
        }
        if (universe > 0 && vertices[i] >= universe) {
            throw std::invalid_argument("vertex label " + std::to_string(vertices[i]) +
                                        " outside [0, " + std::to_string(universe) + ")");
        }
    }
    return unchecked(vertices);
}

VertexSet VertexSet::unchecked(std::span<const Vertex> vertices) noexcept {
    VertexSet s;
    for (Vertex v : vertices) s.push_back(v);
    return s;
}

bool VertexSet::contains(Vertex x) const noexcept {
    for (int i = 0; i < size_; ++i) {
        if (v_[static_cast<std::size_t>(i)] == x) return true;
        if (v_[static_cast<std::size_t>(i)] > x) return false;
    }
    return false;
}

bool VertexSet::contains_all(const VertexSet& sub) const noexcept {
    return intersection_size(*this, sub) == sub.size();
}

bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const VertexSet& s) {
    std::string out = "{";
    for (int i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

Rank binom(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    Rank result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        // result == C(n - r + i - 1, i - 1); the step below stays exact
        Rank factor = static_cast<Rank>(n - r + i);
        Rank product;
        if (__builtin_mul_overflow(result, factor, &product)) {
            // retry with the division split out to postpone overflow
            Rank g = gcd_rank(result, static_cast<Rank>(i));
            Rank reduced = result / g;
            Rank divisor = static_cast<Rank>(i) / g;
            Rank f = factor / divisor;  // divisor | factor since the quotient is integral
            if (__builtin_mul_overflow(reduced, f, &product)) {
                throw std::overflow_error("binom(" + std::to_string(n) + ", " + std::to_string(r) +
                                          ") exceeds 128-bit range");
            }
            result = product;
            continue;
        }
        result = product / static_cast<Rank>(i);
    }
    return result;
}

BinomTable::BinomTable(Vertex universe, int max_arity)
    : stride_(static_cast<std::size_t>(max_arity) + 1) {
    if (max_arity < 0 || max_arity > kMaxArity) {
        throw std::invalid_argument("BinomTable arity out of range");
    }
    constexpr std::size_t kMaxEntries = std::size_t{1} << 21;
    rows_ = static_cast<Vertex>(std::min<std::size_t>(universe, kMaxEntries / stride_));
    table_.resize(static_cast<std::size_t>(rows_) * stride_);
    for (Vertex v = 0; v < rows_; ++v) {
        for (std::size_t r = 0; r < stride_; ++r) {
            table_[static_cast<std::size_t>(v) * stride_ + r] = binom(v, r);
        }
    }
}

Rank colex_rank(const VertexSet& s) {
    Rank rank = 0;
    for (int i = 0; i < s.size(); ++i) rank += binom(s[i], static_cast<std::uint64_t>(i + 1));
    return rank;
}

Rank colex_rank(const VertexSet& s, const BinomTable& table) {
    Rank rank = 0;
    for (int i = 0; i < s.size(); ++i) rank += table(s[i], i + 1);
    return rank;
}

namespace {

template <class Choose>
VertexSet unrank_impl(Rank rank, int r, Vertex n, Choose&& choose) {
    if (r < 0 || r > kMaxArity || static_cast<Vertex>(r) > n) {
        throw std::out_of_range("unrank: arity " + std::to_string(r) + " invalid for n=" +
                                std::to_string(n));
    }
    if (rank >= binom(n, static_cast<std::uint64_t>(r))) {
        throw std::out_of_range("unrank: rank " + to_string(rank) + " out of range for C(" +
                                std::to_string(n) + "," + std::to_string(r) + ")");
    }
    std::array<Vertex, kMaxArity> out{};
    Vertex hi = n;  // exclusive upper bound for the current position
    for (int i = r; i >= 1; --i) {
        // largest v < hi with C(v, i) <= rank
        Vertex lo = static_cast<Vertex>(i - 1);
        Vertex top = hi - 1;
        while (lo < top) {
            Vertex mid = lo + (top - lo + 1) / 2;
            if (choose(mid, i) <= rank) lo = mid;
            else top = mid - 1;
        }
        out[static_cast<std::size_t>(i - 1)] = lo;
        rank -= choose(lo, i);
        hi = lo;
    }
    return VertexSet::unchecked(std::span<const Vertex>(out.data(), static_cast<std::size_t>(r)));
}

}  // namespace

VertexSet colex_unrank(Rank rank, int r, Vertex n) {
    return unrank_impl(rank, r, n, [](Vertex v, int i) { return binom(v, static_cast<std::uint64_t>(i)); });
}

VertexSet colex_unrank(Rank rank, int r, Vertex n, const BinomTable& table) {
    return unrank_impl(rank, r, n, [&](Vertex v, int i) { return table(v, i); });
}

void for_each_subset(const VertexSet& s, int r, const std::function<void(const VertexSet&)>& visit) {
    visit_subsets(s, r, visit);
}

std::vector<VertexSet> r_subsets(const VertexSet& s, int r) {
    std::vector<VertexSet> out;
    visit_subsets(s, r, [&](const VertexSet& sub) { out.push_back(sub); });
    return out;
}

void for_each_superset(const VertexSet& j_set, Vertex n, int k,
                       const std::function<void(const VertexSet&)>& visit) {
    visit_supersets(j_set, n, k, visit);
}

std::vector<VertexSet> k_supersets(const VertexSet& j_set, Vertex n, int k) {
    std::vector<VertexSet> out;
    visit_supersets(j_set, n, k, [&](const VertexSet& sup) { out.push_back(sup); });
    return out;
}

int intersection_size(const VertexSet& a, const VertexSet& b) noexcept {
    int i = 0;
    int j = 0;
    int count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace hypergiant
