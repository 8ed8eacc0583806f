#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hypergiant/census.hpp"
#include "hypergiant/explorer.hpp"
#include "hypergiant/theory.hpp"
#include "oracles.hpp"

using namespace hypergiant;

namespace {

StopParams exhaust_params(Vertex n, int j, bool degree_index = true) {
    StopParams params = StopParams::make(n, j, 1.0, 0.15, 1.0, StopMode::exhaust);
    params.degree_index = degree_index;
    return params;
}

VertexSet first_jset(int j) {
    VertexSet s;
    for (int i = 0; i < j; ++i) s.push_back(static_cast<Vertex>(i));
    return s;
}

// Breadth-first layers of the j-set graph where two j-sets are adjacent when they share an edge.
std::vector<std::set<Rank>> bfs_layers(const EdgeSet& edges, int j, Rank start) {
    std::map<Rank, std::set<Rank>> adjacent;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto subs = r_subsets(edges.edge(e), j);
        for (const auto& a : subs) {
            for (const auto& b : subs) {
                if (!(a == b)) adjacent[colex_rank(a)].insert(colex_rank(b));
            }
        }
    }
    std::vector<std::set<Rank>> layers{{start}};
    std::set<Rank> seen{start};
    while (!layers.back().empty()) {
        std::set<Rank> next;
        for (Rank r : layers.back()) {
            for (Rank s : adjacent[r]) {
                if (seen.insert(s).second) next.insert(s);
            }
        }
        layers.push_back(next);
    }
    return layers;
}

}  // namespace

TEST_CASE("empty hypergraph stops by S1 after the seed") {
    EdgeOracle oracle = EdgeOracle::presampled(EdgeSet{10, 3, {}});
    const ExplorationTrace trace = explore({0, 1}, oracle, 2, exhaust_params(10, 2));
    CHECK(trace.stop_reason == StopReason::S1);
    CHECK(trace.T == 2);
    REQUIRE(trace.generations.size() == 2);
    CHECK(trace.generation(1).size() == 1);
    CHECK(trace.generation(2).size() == 0);
    CHECK(trace.generation(2).component_size == 1);
    CHECK(trace.total_queries == 8);  // C(8, 1) supersets of {0, 1}
    CHECK(trace.total_edges == 0);
}

TEST_CASE("single edge gives a component of three") {
    EdgeOracle oracle = EdgeOracle::presampled(EdgeSet::from_sets(6, 3, {{1, 2, 4}}));
    const ExplorationTrace trace = explore({2, 4}, oracle, 2, exhaust_params(6, 2));
    CHECK(trace.generation_sizes() == std::vector<std::uint64_t>{1, 2, 0});
    const auto found = trace.discovered();
    CHECK(std::set<Rank>(found.begin(), found.end()) ==
          std::set<Rank>{colex_rank({1, 2}), colex_rank({1, 4}), colex_rank({2, 4})});
    CHECK(trace.total_edges == 1);
    CHECK(check_ledger(trace).empty());
}

TEST_CASE("generations are colex-sorted breadth-first layers") {
    SeededStream stream(11, 0);
    int compared = 0;
    for (int k : {3, 4}) {
        for (int j = 1; j < k; ++j) {
            for (Vertex n : {Vertex(7), Vertex(9)}) {
                const double p = 1.5 * critical_p(n, k, j);
                for (int s = 0; s < 25; ++s) {
                    const EdgeSet edges = oracle::bernoulli_hypergraph(n, k, std::min(p, 1.0), stream);
                    const VertexSet start = colex_unrank(stream.below(binom(n, static_cast<std::uint64_t>(j))), j, n);
                    EdgeOracle o = EdgeOracle::presampled(edges);
                    const ExplorationTrace trace = explore(start, o, j, exhaust_params(n, j));
                    const auto layers = bfs_layers(edges, j, colex_rank(start));
                    REQUIRE(trace.generations.size() == layers.size());
                    for (std::size_t i = 0; i < layers.size(); ++i) {
                        const auto& members = trace.generations[i].members;
                        CHECK(std::is_sorted(members.begin(), members.end()));
                        CHECK(std::set<Rank>(members.begin(), members.end()) == layers[i]);
                    }
                    ++compared;
                }
            }
        }
    }
    CHECK(compared == 250);
}

TEST_CASE("exhaustive exploration matches the census component") {
    SeededStream stream(12, 0);
    for (int k : {3, 4}) {
        for (int j = 1; j < k; ++j) {
            for (Vertex n : {Vertex(6), Vertex(8), Vertex(10)}) {
                const double p = std::min(1.0, 1.2 * critical_p(n, k, j));
                for (int s = 0; s < 100; ++s) {
                    const EdgeSet edges = oracle::bernoulli_hypergraph(n, k, p, stream);
                    const ComponentCensus census = build_census(edges, j);
                    const Rank start_rank = stream.below(binom(n, static_cast<std::uint64_t>(j)));
                    EdgeOracle o = EdgeOracle::presampled(edges);
                    const ExplorationTrace trace = explore(colex_unrank(start_rank, j, n), o, j, exhaust_params(n, j, false));
                    auto found = trace.discovered();
                    std::sort(found.begin(), found.end());
                    const auto index = census.component_of(start_rank);
                    if (index) {
                        CHECK(found == census.members(*index));
                    } else {
                        CHECK(found == std::vector<Rank>{start_rank});
                    }
                }
            }
        }
    }
}

TEST_CASE("query and edge accounting") {
    SeededStream stream(13, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Vertex n = 40;
        EdgeOracle oracle = EdgeOracle::lazy(n, 3, 1.1 * critical_p(n, 3, 2), stream.substream(static_cast<std::uint64_t>(trial)));
        const ExplorationTrace trace = explore({0, 1}, oracle, 2, exhaust_params(n, 2));
        CHECK(oracle.query_count() == trace.total_queries);
        CHECK(oracle.revealed_edges().size() == trace.total_edges);
        std::uint64_t queries = 0;
        std::uint64_t edges = 0;
        std::uint64_t size = 0;
        for (const auto& g : trace.generations) {
            queries += g.queries;
            edges += g.edges;
            size += g.size();
            CHECK(g.component_size == size);
        }
        CHECK(queries == trace.total_queries);
        CHECK(edges == trace.total_edges);
    }
}

TEST_CASE("observer sees every expanded member once") {
    SeededStream stream(14, 0);
    EdgeOracle oracle = EdgeOracle::lazy(60, 3, 1.2 * critical_p(60, 3, 2), stream);
    std::vector<Expansion> seen;
    const ExplorationTrace trace = explore({3, 7}, oracle, 2, exhaust_params(60, 2),
                                           [&](const Expansion& e) { seen.push_back(e); });
    std::uint64_t expanded = 0;
    for (std::size_t i = 0; i + 1 < trace.generations.size(); ++i) expanded += trace.generations[i].size();
    CHECK(seen.size() == expanded);
    std::uint64_t queries = 0;
    std::uint64_t discovered = 0;
    for (const auto& e : seen) {
        queries += e.queries;
        discovered += e.discovered;
        CHECK(e.discovered <= 2 * e.edges);
    }
    CHECK(queries == trace.total_queries);
    CHECK(discovered + 1 == trace.generations.back().component_size);
}

TEST_CASE("ledger identity and caps hold on random explorations") {
    SeededStream stream(15, 0);
    for (int k : {3, 4, 5}) {
        for (int j = 1; j < k; ++j) {
            const Vertex n = 24;
            for (int s = 0; s < 10; ++s) {
                StopParams params = exhaust_params(n, j);
                params.query_ledger = true;
                EdgeOracle oracle = EdgeOracle::lazy(n, k, std::min(1.0, 1.3 * critical_p(n, k, j)),
                                                     stream.substream(static_cast<std::uint64_t>(100 * k + 10 * j + s)));
                const ExplorationTrace trace = explore(first_jset(j), oracle, j, params);
                const auto issues = check_ledger(trace);
                CHECK_MESSAGE(issues.empty(), "k=", k, " j=", j, " first issue: ", issues.empty() ? "" : issues[0].what);
                CHECK(trace.ledger.steps.size() == trace.generations.size());
                for (int l = 1; l < j; ++l) {
                    const auto level = static_cast<std::size_t>(l);
                    CHECK(trace.ledger.max_jump_event[level] <= to_u64(binom(static_cast<std::uint64_t>(k - l), static_cast<std::uint64_t>(j - l))));
                    CHECK(trace.ledger.max_pivot_event[level] + 1 <= to_u64(binom(static_cast<std::uint64_t>(k - l), static_cast<std::uint64_t>(j - l))));
                }
            }
        }
    }
}

TEST_CASE("ledger checker flags a tampered entry") {
    EdgeOracle oracle = EdgeOracle::lazy(12, 3, 0.3, SeededStream(16, 0));
    ExplorationTrace trace = explore({0, 1}, oracle, 2, exhaust_params(12, 2));
    REQUIRE(check_ledger(trace).empty());
    bool tampered = false;
    for (auto& step : trace.ledger.steps) {
        if (step.size() > 1 && !step[1].empty()) {
            step[1][0].second.jump += 1;
            tampered = true;
            break;
        }
    }
    REQUIRE(tampered);
    CHECK_FALSE(check_ledger(trace).empty());
}

TEST_CASE("exploration is deterministic in its stream") {
    auto run = [](std::uint64_t seed) {
        EdgeOracle oracle = EdgeOracle::lazy(80, 3, 1.1 * critical_p(80, 3, 2), SeededStream(seed, 5));
        return explore({10, 20}, oracle, 2, exhaust_params(80, 2));
    };
    const ExplorationTrace a = run(7);
    const ExplorationTrace b = run(7);
    CHECK(a.generation_sizes() == b.generation_sizes());
    CHECK(a.discovered() == b.discovered());
    CHECK(a.total_queries == b.total_queries);
    std::ostringstream ta;
    std::ostringstream tb;
    write_trace_csv(ta, a);
    write_trace_csv(tb, b);
    CHECK(ta.str() == tb.str());
}

TEST_CASE("stop rules on the complete hypergraph") {
    // n = 20, j = 2, lambda = 0.1: S2 at 40 j-sets, S3 at 4. Generations 1, 36, 153.
    const Vertex n = 20;
    auto run = [&](StopMode mode) {
        EdgeOracle oracle = EdgeOracle::lazy(n, 3, 1.0, SeededStream(1, 1));
        return explore({0, 1}, oracle, 2, StopParams::make(n, 2, 0.1, 0.15, 1.0, mode));
    };
    const ExplorationTrace to_t = run(StopMode::run_to_T);
    CHECK(to_t.stop_reason == StopReason::S3);
    CHECK(to_t.T == 2);
    CHECK_FALSE(to_t.T_large.has_value());
    CHECK(to_t.generation_sizes() == std::vector<std::uint64_t>{1, 36});
    CHECK(to_t.stopped_by_S());

    const ExplorationTrace to_large = run(StopMode::run_to_T_large);
    CHECK(to_large.T == 2);
    REQUIRE(to_large.T_large.has_value());
    CHECK(*to_large.T_large == 3);
    CHECK(to_large.generation_sizes() == std::vector<std::uint64_t>{1, 36, 153});
    CHECK_FALSE(check_size_at_T_large(to_large, 0.1, n, 2));  // 190 > 3 lambda n^j = 120
    CHECK_THROWS_AS(check_size_at_T_large(to_t, 0.1, n, 2), std::logic_error);

    const ExplorationTrace full = run(StopMode::exhaust);
    CHECK(full.stop_reason == StopReason::S3);
    CHECK(full.generation_sizes() == std::vector<std::uint64_t>{1, 36, 153, 0});
}

TEST_CASE("S2 takes precedence over S3") {
    // lambda = 0.3: S2 at 120 and S3 at 36; round 2 has |C| = 37 and |G_2| = 36.
    EdgeOracle oracle = EdgeOracle::lazy(20, 3, 1.0, SeededStream(1, 1));
    StopParams params = StopParams::make(20, 2, 0.3, 0.15, 1.0);
    params.component_cutoff = 37.0;
    const ExplorationTrace trace = explore({0, 1}, oracle, 2, params);
    CHECK(trace.T == 2);
    CHECK(trace.stop_reason == StopReason::S2);
}

TEST_CASE("input validation") {
    EdgeOracle oracle = EdgeOracle::presampled(EdgeSet{10, 3, {}});
    const StopParams params = exhaust_params(10, 2);
    CHECK_THROWS_AS(explore({0, 1}, oracle, 3, params), std::invalid_argument);
    CHECK_THROWS_AS(explore({0, 1, 2}, oracle, 2, params), std::invalid_argument);
    CHECK_THROWS_AS(explore({0, 10}, oracle, 2, params), std::invalid_argument);
    CHECK_THROWS_AS(explore({0, 1}, oracle, 2, StopParams{}), std::invalid_argument);
    CHECK_THROWS_AS(StopParams::make(10, 2, 0.001, 0.15, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StopParams::make(10, 2, 0.5, 0.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StopParams::make(10, 2, 0.5, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("degree bounds hold at their desk instantiation") {
    const Vertex n = 200;
    const double eps = 0.2;
    const DefaultParams d = default_params(n, 3, 2, eps);
    const TheoryConstants constants = build_constants(3, 2, eps);
    SeededStream stream(17, 0);
    std::uint64_t stopped_by_s = 0;
    for (std::uint64_t t = 0; t < 40; ++t) {
        EdgeOracle oracle = EdgeOracle::lazy(n, 3, (1.0 + eps) * critical_p(n, 3, 2), stream.substream(t));
        const ExplorationTrace trace = explore(colex_unrank(stream.below(binom(n, 2)), 2, n), oracle, 2, d.stop);
        CHECK(check_theorem3(trace, constants, d.stop.delta).empty());
        CHECK(check_ledger(trace).empty());
        if (trace.stopped_by_S()) {
            ++stopped_by_s;
            const std::vector<double> kappa(constants.C.begin() + 1, constants.C.end());
            CHECK(check_corollary4(trace, d.stop.xi, kappa));
        } else {
            const std::vector<double> kappa(constants.C.begin() + 1, constants.C.end());
            CHECK_THROWS_AS(check_corollary4(trace, d.stop.xi, kappa), std::logic_error);
        }
    }
    CHECK(stopped_by_s > 0);
}

TEST_CASE("degree checker error paths") {
    EdgeOracle oracle = EdgeOracle::presampled(EdgeSet{10, 3, {}});
    const ExplorationTrace plain = explore({0, 1}, oracle, 2, exhaust_params(10, 2, false));
    CHECK_THROWS_AS(check_theorem3(plain, build_constants(3, 2, 0.1), 0.15), std::logic_error);
    EdgeOracle again = EdgeOracle::presampled(EdgeSet{10, 3, {}});
    const ExplorationTrace indexed = explore({0, 1}, again, 2, exhaust_params(10, 2));
    CHECK_THROWS_AS(check_theorem3(indexed, build_constants(4, 2, 0.1), 0.15), std::invalid_argument);
    CHECK(check_theorem3(indexed, build_constants(3, 2, 0.1), 0.15).empty());
}

TEST_CASE("degree bound flags an inflated degree") {
    EdgeOracle oracle = EdgeOracle::lazy(20, 3, 1.0, SeededStream(1, 1));
    ExplorationTrace trace = explore({0, 1}, oracle, 2, exhaust_params(20, 2));
    TheoryConstants tiny = build_constants(3, 2, 0.1);
    for (auto& c : tiny.C) c = 1e-6;
    CHECK_FALSE(check_theorem3(trace, tiny, 0.15).empty());
}

TEST_CASE("staybig horizon") {
    EdgeOracle oracle = EdgeOracle::lazy(20, 3, 1.0, SeededStream(1, 1));
    const ExplorationTrace full = explore({0, 1}, oracle, 2, exhaust_params(20, 2));
    // sizes 1, 36, 153, 0 against n = 20; lambda = 1 never stops early, so T = 4 and rounds 2, 3 are examined
    CHECK(staybig_applicable_rounds(full, 20) == 2);
    CHECK(check_staybig(full, 20) == std::vector<std::uint64_t>{3});
    CHECK(staybig_applicable_rounds(full, 1000) == 0);
}

TEST_CASE("multi-start frequency") {
    const Vertex n = 30;
    const StopParams params = StopParams::make(n, 2, 0.2, 0.15, 1.0);
    SeededStream stream(18, 0);
    const StopFrequency none = multi_start_stop_frequency(
        [&](std::uint64_t) { return EdgeOracle::presampled(EdgeSet{n, 3, {}}); }, n, 2, params, 50, stream);
    CHECK(none.estimate == 0.0);
    CHECK(none.s1 == 50);
    const StopFrequency all = multi_start_stop_frequency(
        [&](std::uint64_t t) { return EdgeOracle::lazy(n, 3, 1.0, SeededStream(3, t)); }, n, 2, params, 50, stream);
    CHECK(all.estimate == 1.0);
    CHECK(all.s1 == 0);
    CHECK(all.s2 + all.s3 == 50);
}

TEST_CASE("trace csv layout") {
    EdgeOracle oracle = EdgeOracle::lazy(20, 3, 1.0, SeededStream(1, 1));
    const ExplorationTrace trace = explore({0, 1}, oracle, 2, StopParams::make(20, 2, 0.1, 0.15, 1.0));
    std::ostringstream out;
    write_trace_csv(out, trace);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "#schema=hypergiant.trace/1");
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rfind("round,generation_size,component_size,max_degree_l1,queries,edges", 0) == 0);
    CHECK(rows[1].rfind("1,1,1,", 0) == 0);
    CHECK(rows[2].rfind("2,36,37,", 0) == 0);
}
