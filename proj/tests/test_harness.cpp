#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "hypergiant/harness.hpp"

using namespace hypergiant;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return config_from_text(in);
}

std::string summary_of(const Report& report) {
    std::ostringstream out;
    write_trials_csv(out, report);
    write_summary_csv(out, report);
    return out.str();
}

struct WorkerScope {
    explicit WorkerScope(const char* value) { setenv("HYPERGIANT_WORKERS", value, 1); }
    ~WorkerScope() { unsetenv("HYPERGIANT_WORKERS"); }
};

const Check* find_check(const Report& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ExperimentConfig small_explore() {
    ExperimentConfig config;
    config.n = 100;
    config.eps = 0.2;
    config.trials = 40;
    config.seed = 9;
    return config;
}

}  // namespace

TEST_CASE("config text parsing") {
    const ExperimentConfig c = parse(
        "# comment line\n"
        "n = 700\n"
        "  k=4   # trailing comment\n"
        "j = 3\n"
        "\n"
        "regime = sub\n"
        "eps = 0.15\n"
        "trials = 20\n"
        "mode = T_large\n"
        "degree_index = 0\n"
        "eps_grid = 0.05, 0.2\n"
        "format = json\n"
        "n = 800\n");
    CHECK(c.n == 800);
    CHECK(c.k == 4);
    CHECK(c.j == 3);
    CHECK(c.regime == Regime::sub);
    CHECK(c.eps == 0.15);
    CHECK(c.trials == 20);
    CHECK(c.mode == StopMode::run_to_T_large);
    CHECK_FALSE(c.degree_index);
    CHECK(c.eps_grid == std::vector<double>{0.05, 0.2});
    CHECK(c.format == "json");
    CHECK(c.edge_probability() == doctest::Approx(0.85 / (3.0 * 800.0)));
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("n = ten\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("n = 10x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("just words\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("format = xml\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("regime = critical\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("mode = forever\n"), std::invalid_argument);
}

TEST_CASE("config text round-trips") {
    ExperimentConfig c = parse("n = 321\np = 0.0031\nlambda = 0.02\nxi = 3.5\neps_grid = 0.1,0.3\nseed = 77\n");
    const std::string text = c.to_text();
    const ExperimentConfig again = parse(text);
    CHECK(again.to_text() == text);
    CHECK(again.p == 0.0031);
    CHECK(again.lambda == 0.02);
}

TEST_CASE("explicit values override file values") {
    ExperimentConfig c = parse("n = 300\neps = 0.1\n");
    set_config_value(c, "eps", "0.2");
    CHECK(c.n == 300);
    CHECK(c.eps == 0.2);
    CHECK_THROWS_AS(set_config_value(c, "nope", "1"), std::invalid_argument);
}

TEST_CASE("format_double") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2500.0) == "2500");
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
}

TEST_CASE("worker count") {
    CHECK(worker_count() == 1);
    {
        WorkerScope w("3");
        CHECK(worker_count() == 3);
    }
    {
        WorkerScope w("zero");
        CHECK(worker_count() == 1);
    }
}

TEST_CASE("parallel_trials runs every index and rethrows") {
    WorkerScope w("4");
    std::vector<int> hits(1000, 0);
    parallel_trials(1000, [&](std::uint64_t t) { ++hits[t]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_trials(100, [](std::uint64_t t) {
                        if (t == 57) throw std::runtime_error("trial 57");
                    }),
                    std::runtime_error);
}

TEST_CASE("census with p = 0 is empty") {
    ExperimentConfig config;
    config.n = 50;
    config.p = 0.0;
    config.trials = 3;
    const Report r = run_census_sweep(config);
    REQUIRE(r.trials.size() == 3);
    for (const auto& t : r.trials) CHECK(t.largest == 0);
    const Check* c = find_check(r, "empty_hypergraph");
    REQUIRE(c != nullptr);
    CHECK(c->passed);
    CHECK(r.passed());
}

TEST_CASE("census oversize guard") {
    ExperimentConfig config;
    config.n = 2000;
    config.k = 3;
    config.j = 1;
    config.trials = 1;
    config.edge_cap = 100.0;
    CHECK_THROWS_AS(run_census_sweep(config), std::length_error);
}

TEST_CASE("census reports are reproducible and worker-independent") {
    ExperimentConfig config;
    config.n = 120;
    config.eps = 0.3;
    config.trials = 8;
    config.seed = 4;
    const std::string serial = summary_of(run_census_sweep(config));
    CHECK(summary_of(run_census_sweep(config)) == serial);
    WorkerScope w("3");
    CHECK(summary_of(run_census_sweep(config)) == serial);
    config.seed = 5;
    CHECK(summary_of(run_census_sweep(config)) != serial);
}

TEST_CASE("trial streams are keyed by the trial index") {
    ExperimentConfig config = small_explore();
    const Report r = run_exploration_sweep(config);
    REQUIRE(r.trials.size() == config.trials);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        CHECK(r.trials[t].trial == t);
        CHECK(r.trials[t].stream_id == (config.seed ^ t));
    }
    // fewer trials reproduce the leading records exactly
    config.trials = 10;
    const Report head = run_exploration_sweep(config);
    for (std::uint64_t t = 0; t < 10; ++t) {
        CHECK(head.trials[t].component_size == r.trials[t].component_size);
        CHECK(head.trials[t].T == r.trials[t].T);
    }
}

TEST_CASE("exploration sweep checks") {
    ExperimentConfig config = small_explore();
    const Report r = run_exploration_sweep(config);
    for (const char* name : {"degree_bound", "ledger_identity", "degree_bound_at_T"}) {
        const Check* c = find_check(r, name);
        REQUIRE_MESSAGE(c != nullptr, name);
        CHECK_MESSAGE(c->passed, name);
    }
    CHECK(find_check(r, "stop_frequency") != nullptr);
    CHECK(r.aggregate("stop_frequency").has_value());

    WorkerScope w("4");
    CHECK(summary_of(run_exploration_sweep(config)) == summary_of(r));
}

TEST_CASE("exploration sweep to T_large") {
    ExperimentConfig config = small_explore();
    config.mode = StopMode::run_to_T_large;
    const Report r = run_exploration_sweep(config);
    CHECK(find_check(r, "size_at_T_large") != nullptr);
    CHECK(find_check(r, "generation_monotonicity") != nullptr);
    for (const auto& t : r.trials) CHECK(t.size_bound_ok.has_value());
}

TEST_CASE("subcritical exploration sweep") {
    ExperimentConfig config = small_explore();
    config.regime = Regime::sub;
    const Report r = run_exploration_sweep(config);
    const Check* c = find_check(r, "subcritical_s1");
    REQUIRE(c != nullptr);
    CHECK(c->passed);
}

TEST_CASE("branching suite") {
    ExperimentConfig config;
    config.eps = 0.2;
    config.branching_trials = 2000;
    const Report r = run_branching_suite(config);
    for (const char* name : {"cap_sensitivity", "upper_vs_solver", "lower_below_upper", "pivot_l1_subcritical", "dual_progeny"}) {
        const Check* c = find_check(r, name);
        REQUIRE_MESSAGE(c != nullptr, name);
        CHECK_MESSAGE(c->passed, name);
    }
    CHECK(r.aggregate("upper_survival").has_value());
    CHECK(r.aggregate("lower_survival").has_value());
}

TEST_CASE("sweep prefixes every point") {
    ExperimentConfig config = small_explore();
    config.trials = 10;
    config.branching_trials = 500;
    config.eps_grid = {0.2};
    const Report r = run_sweep(config);
    CHECK(find_check(r, "eps=0.20000000000000001/super/bracket") != nullptr);
    CHECK(find_check(r, "eps=0.20000000000000001/sub/explore/degree_bound") != nullptr);
    CHECK(r.aggregate("eps=0.20000000000000001/super/branching/upper_survival").has_value());
}

TEST_CASE("summary csv rows have six fields") {
    ExperimentConfig config = small_explore();
    config.trials = 10;
    std::istringstream in(summary_of(run_exploration_sweep(config)));
    std::string line;
    bool in_summary = false;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line == "#schema=hypergiant.summary/1") in_summary = true;
        if (!in_summary || line.empty() || line[0] == '#') continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows > 3);
}

TEST_CASE("json report") {
    ExperimentConfig config;
    config.n = 60;
    config.trials = 2;
    config.eps = 0.3;
    std::ostringstream out;
    write_report_json(out, run_census_sweep(config));
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["schema"] == "hypergiant.report/1");
    CHECK(doc["kind"] == "census");
    CHECK(doc["trials"].size() == 2);
    CHECK(doc["trials"][0].contains("largest"));
    CHECK(doc["aggregates"].contains("mean_largest"));
    CHECK(doc["passed"].is_boolean());
}

TEST_CASE("regime names") {
    CHECK(parse_regime("sub") == Regime::sub);
    CHECK(to_string(Regime::super) == "super");
    CHECK_THROWS_AS(parse_regime("near"), std::invalid_argument);
}
