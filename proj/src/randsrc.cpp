#include "hypergiant/randsrc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace hypergiant {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x68677374u};
    return std::mt19937_64(seq);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr double kHalfLog2Pi = 0.91893853320467274178;

// log(x!) - Stirling part; series for x >= 16, lgamma below.
double stirling_correction(double x) {
    if (x < 16.0) {
        return std::lgamma(x + 1.0) - ((x + 0.5) * std::log(x + 1.0) - (x + 1.0) + kHalfLog2Pi);
    }
    double z = x + 1.0;
    double z2 = z * z;
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * z2)) / z2) / z;
}

// log(a!) - log(b!) without forming either term, so huge arguments keep precision.
double log_factorial_diff(double a, double b) {
    double d = a - b;
    return (a + 0.5) * std::log1p(d / (b + 1.0)) + d * std::log(b + 1.0) - d +
           stirling_correction(a) - stirling_correction(b);
}

std::uint64_t binomial_inversion(SeededStream& stream, std::uint64_t trials, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = (static_cast<double>(trials) + 1.0) * s;
    const double start = std::exp(static_cast<double>(trials) * std::log1p(-p));
    // P(X > 1000) is below 1e-300 when trials*p <= 30
    const std::uint64_t bound = std::min<std::uint64_t>(trials, 1000);
    while (true) {
        double u = stream.uniform01();
        double r = start;
        std::uint64_t x = 0;
        bool ok = true;
        while (u > r) {
            u -= r;
            ++x;
            if (x > bound) {
                ok = false;
                break;
            }
            r *= a / static_cast<double>(x) - s;
        }
        if (ok) return x;
    }
}

std::uint64_t binomial_btrs(SeededStream& stream, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double q = 1.0 - p;
    const double spq = std::sqrt(n * p * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = n * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double lpq = std::log(p / q);
    const double m = std::floor((n + 1.0) * p);
    while (true) {
        double u = stream.uniform01() - 0.5;
        double v = stream.uniform01();
        double us = 0.5 - std::fabs(u);
        if (us <= 0.0 || v <= 0.0) continue;
        double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > n) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kd);
        double lhs = std::log(v * alpha / (a / (us * us) + b));
        double rhs = log_factorial_diff(m, kd) + log_factorial_diff(n - m, n - kd) + (kd - m) * lpq;
        if (lhs <= rhs) return static_cast<std::uint64_t>(kd);
    }
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

std::uint64_t SeededStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

Rank SeededStream::below(Rank bound) {
    if (bound == 0) throw std::invalid_argument("below: bound must be positive");
    if (bound <= ~std::uint64_t{0}) return below(static_cast<std::uint64_t>(bound));
    const Rank threshold = (Rank{0} - bound) % bound;
    while (true) {
        Rank r = (static_cast<Rank>(engine_()) << 64) | engine_();
        if (r >= threshold) return r % bound;
    }
}

SeededStream SeededStream::substream(std::uint64_t child) const {
    return SeededStream(seed_, mix64(stream_id_ ^ mix64(child + 1)));
}

std::uint64_t binomial_draw(SeededStream& stream, std::uint64_t trials, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial_draw: p must lie in [0, 1]");
    }
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - binomial_draw(stream, trials, 1.0 - p);
    if (static_cast<double>(trials) * p <= 30.0) return binomial_inversion(stream, trials, p);
    return binomial_btrs(stream, trials, p);
}

bool EdgeSet::contains(Rank k_set) const noexcept {
    return std::binary_search(edges.begin(), edges.end(), k_set);
}

EdgeSet EdgeSet::from_ranks(Vertex n, int k, std::vector<Rank> ranks) {
    if (k < 1 || k > kMaxArity || static_cast<Vertex>(k) > n) {
        throw std::invalid_argument("EdgeSet: invalid (n, k)");
    }
    std::sort(ranks.begin(), ranks.end());
    if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end()) {
        throw std::invalid_argument("EdgeSet: duplicate edge");
    }
    if (!ranks.empty() && ranks.back() >= binom(n, static_cast<std::uint64_t>(k))) {
        throw std::invalid_argument("EdgeSet: edge rank out of range");
    }
    EdgeSet out;
    out.n = n;
    out.k = k;
    out.edges = std::move(ranks);
    return out;
}

EdgeSet EdgeSet::from_sets(Vertex n, int k, const std::vector<VertexSet>& sets) {
    std::vector<Rank> ranks;
    ranks.reserve(sets.size());
    for (const auto& s : sets) {
        if (s.size() != k) throw std::invalid_argument("EdgeSet: edge " + to_string(s) + " is not a k-set");
        VertexSet::checked(s.vertices(), n);
        ranks.push_back(colex_rank(s));
    }
    return from_ranks(n, k, std::move(ranks));
}

void write_edge_set(std::ostream& out, const EdgeSet& edges) {
    out << edges.n << ' ' << edges.k << ' ' << edges.size() << '\n';
    BinomTable table(edges.n, edges.k);
    for (Rank r : edges.edges) {
        VertexSet e = colex_unrank(r, edges.k, edges.n, table);
        for (int i = 0; i < e.size(); ++i) {
            if (i > 0) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
}

EdgeSet read_edge_set(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("edge set: missing header");
    std::istringstream header(line);
    std::uint64_t n = 0;
    int k = 0;
    std::uint64_t m = 0;
    if (!(header >> n >> k >> m)) throw std::runtime_error("edge set: malformed header '" + line + "'");
    if (n > ~Vertex{0} || k < 1 || k > kMaxArity) throw std::runtime_error("edge set: header out of range");
    std::vector<VertexSet> sets;
    sets.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        if (!std::getline(in, line)) throw std::runtime_error("edge set: expected " + std::to_string(m) + " edges");
        std::istringstream row(line);
        std::vector<Vertex> vs;
        std::uint64_t v;
        while (row >> v) vs.push_back(static_cast<Vertex>(v));
        if (static_cast<int>(vs.size()) != k) {
            throw std::runtime_error("edge set: line " + std::to_string(e + 2) + " is not a k-set");
        }
        sets.push_back(VertexSet::checked(vs, static_cast<Vertex>(n)));
    }
    return EdgeSet::from_sets(static_cast<Vertex>(n), k, sets);
}

EdgeSet sample_hypergraph(Vertex n, int k, double p, SeededStream& stream, double max_expected_edges) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_hypergraph: p must lie in [0, 1]");
    if (k < 1 || k > kMaxArity || static_cast<Vertex>(k) > n) {
        throw std::invalid_argument("sample_hypergraph: invalid (n, k)");
    }
    Rank total_rank = binom(n, static_cast<std::uint64_t>(k));
    double expected = p * to_double(total_rank);
    if (expected > max_expected_edges) {
        throw std::length_error("sample_hypergraph: expected " + std::to_string(expected) +
                                " edges for (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                ", p=" + std::to_string(p) + ") exceeds the cap " +
                                std::to_string(max_expected_edges) + "; use exploration mode instead");
    }
    if (total_rank > ~std::uint64_t{0}) {
        throw std::length_error("sample_hypergraph: C(n,k) exceeds 64 bits; use exploration mode instead");
    }
    const std::uint64_t total = static_cast<std::uint64_t>(total_rank);
    const std::uint64_t m = binomial_draw(stream, total, p);

    std::vector<Rank> ranks;
    const bool complement = m > total / 2;
    const std::uint64_t picks = complement ? total - m : m;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(picks * 2);
    std::vector<std::uint64_t> order;
    order.reserve(picks);
    while (order.size() < picks) {
        std::uint64_t r = stream.below(total);
        if (chosen.insert(r).second) order.push_back(r);
    }
    if (complement) {
        ranks.reserve(m);
        for (std::uint64_t r = 0; r < total; ++r) {
            if (!chosen.contains(r)) ranks.push_back(r);
        }
    } else {
        ranks.assign(order.begin(), order.end());
    }
    return EdgeSet::from_ranks(n, k, std::move(ranks));
}

EdgeOracle::EdgeOracle(Vertex n, int k, std::variant<Presampled, Lazy> backend)
    : n_(n), k_(k), backend_(std::move(backend)) {}

EdgeOracle EdgeOracle::presampled(EdgeSet edges) {
    Vertex n = edges.n;
    int k = edges.k;
    return EdgeOracle(n, k, Presampled{std::move(edges)});
}

EdgeOracle EdgeOracle::lazy(Vertex n, int k, double p, SeededStream stream) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("EdgeOracle: p must lie in [0, 1]");
    if (k < 1 || k > kMaxArity || static_cast<Vertex>(k) > n) throw std::invalid_argument("EdgeOracle: invalid (n, k)");
    return EdgeOracle(n, k, Lazy{p, std::move(stream)});
}

bool EdgeOracle::draw(Rank k_set) {
    if (auto* pre = std::get_if<Presampled>(&backend_)) return pre->edges.contains(k_set);
    auto& lazy = std::get<Lazy>(backend_);
    return lazy.stream.bernoulli(lazy.p);
}

std::optional<bool> EdgeOracle::reveal_if_new(Rank k_set) {
    auto [slot, inserted] = revealed_.try_emplace(k_set);
    if (!inserted) return std::nullopt;
    if (revealed_.size() > reveal_limit_) {
        throw std::runtime_error("EdgeOracle: reveal limit of " + std::to_string(reveal_limit_) +
                                 " k-sets exceeded");
    }
    bool edge = draw(k_set);
    *slot = edge ? 1 : 0;
    return edge;
}

bool EdgeOracle::query(Rank k_set) {
    if (const auto* known = revealed_.find(k_set)) return *known != 0;
    return *reveal_if_new(k_set);
}

EdgeSet EdgeOracle::revealed_edges() const {
    std::vector<Rank> ranks;
    revealed_.for_each([&](Rank r, std::uint8_t edge) {
        if (edge) ranks.push_back(r);
    });
    return EdgeSet::from_ranks(n_, k_, std::move(ranks));
}

}  // namespace hypergiant
