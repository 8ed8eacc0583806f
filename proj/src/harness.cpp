#include "hypergiant/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "hypergiant/branching.hpp"
#include "hypergiant/census.hpp"
#include "hypergiant/explorer.hpp"
#include "hypergiant/randsrc.hpp"
#include "hypergiant/theory.hpp"

namespace hypergiant {

std::string to_string(Regime regime) { return regime == Regime::sub ? "sub" : "super"; }

Regime parse_regime(const std::string& text) {
    if (text == "sub") return Regime::sub;
    if (text == "super") return Regime::super;
    throw std::invalid_argument("unknown regime '" + text + "' (expected sub or super)");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw std::invalid_argument("config: bad value '" + text + "' for " + key);
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes") return true;
    if (text == "0" || text == "false" || text == "no") return false;
    throw std::invalid_argument("config: bad boolean '" + text + "' for " + key);
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

SeededStream trial_stream(const ExperimentConfig& config, std::uint64_t trial) {
    return SeededStream(config.seed, config.seed ^ trial);
}

double mean_of(const std::vector<TrialRecord>& records, std::uint64_t TrialRecord::*field) {
    if (records.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : records) sum += static_cast<double>(r.*field);
    return sum / static_cast<double>(records.size());
}

double std_error_of(const std::vector<TrialRecord>& records, std::uint64_t TrialRecord::*field) {
    if (records.size() < 2) return 0.0;
    const double mean = mean_of(records, field);
    double ss = 0.0;
    for (const auto& r : records) {
        const double d = static_cast<double>(r.*field) - mean;
        ss += d * d;
    }
    const auto n = static_cast<double>(records.size());
    return std::sqrt(ss / (n - 1.0) / n);
}

double proportion_se(double p, std::uint64_t trials) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(std::max<std::uint64_t>(trials, 1)));
}

std::int64_t excess_of(int k, int j) {
    return static_cast<std::int64_t>(binom(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(j))) - 1;
}

StopParams stop_params_for(const ExperimentConfig& config) {
    const DefaultParams defaults = default_params(config.n, config.k, config.j, config.eps, config.delta);
    StopParams stop = defaults.stop;
    if (config.lambda || config.xi) {
        stop = StopParams::make(config.n, config.j, config.lambda.value_or(defaults.stop.lambda), config.delta,
                                config.xi.value_or(defaults.stop.xi));
    }
    stop.mode = config.mode;
    stop.degree_index = config.degree_index;
    return stop;
}

std::string percent(double fraction) { return std::to_string(std::lround(100.0 * fraction)) + "%"; }

void add_check(Report& report, std::string name, double observed, double target, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), observed, target, passed, std::move(detail)});
}

std::string optional_text(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }

}  // namespace

double ExperimentConfig::edge_probability() const {
    if (p) return *p;
    const double scale = regime == Regime::super ? 1.0 + eps : 1.0 - eps;
    return scale * critical_p(n, k, j);
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    out << "n = " << n << '\n' << "k = " << k << '\n' << "j = " << j << '\n';
    out << "regime = " << to_string(regime) << '\n' << "eps = " << format_double(eps) << '\n';
    if (p) out << "p = " << format_double(*p) << '\n';
    out << "trials = " << trials << '\n' << "seed = " << seed << '\n';
    if (lambda) out << "lambda = " << format_double(*lambda) << '\n';
    out << "delta = " << format_double(delta) << '\n';
    if (xi) out << "xi = " << format_double(*xi) << '\n';
    out << "mode = " << to_string(mode) << '\n' << "degree_index = " << (degree_index ? 1 : 0) << '\n';
    out << "progeny_cap = " << progeny_cap << '\n' << "branching_trials = " << branching_trials << '\n';
    out << "edge_cap = " << format_double(edge_cap) << '\n' << "eps_grid = " << join_doubles(eps_grid) << '\n';
    return out.str();
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "n") config.n = parse_number<Vertex>(key, value);
    else if (key == "k") config.k = parse_number<int>(key, value);
    else if (key == "j") config.j = parse_number<int>(key, value);
    else if (key == "regime") config.regime = parse_regime(value);
    else if (key == "eps") config.eps = parse_number<double>(key, value);
    else if (key == "p") config.p = parse_number<double>(key, value);
    else if (key == "trials") config.trials = parse_number<std::uint64_t>(key, value);
    else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "lambda") config.lambda = parse_number<double>(key, value);
    else if (key == "delta") config.delta = parse_number<double>(key, value);
    else if (key == "xi") config.xi = parse_number<double>(key, value);
    else if (key == "mode") config.mode = parse_stop_mode(value);
    else if (key == "degree_index") config.degree_index = parse_bool(key, value);
    else if (key == "progeny_cap") config.progeny_cap = parse_number<std::uint64_t>(key, value);
    else if (key == "branching_trials") config.branching_trials = parse_number<std::uint64_t>(key, value);
    else if (key == "edge_cap") config.edge_cap = parse_number<double>(key, value);
    else if (key == "eps_grid") {
        std::vector<double> grid;
        std::istringstream in(value);
        std::string item;
        while (std::getline(in, item, ',')) grid.push_back(parse_number<double>(key, trim(item)));
        if (grid.empty()) throw std::invalid_argument("config: eps_grid is empty");
        config.eps_grid = std::move(grid);
    } else if (key == "format") {
        if (value != "csv" && value != "json") throw std::invalid_argument("config: format must be csv or json");
        config.format = value;
    } else if (key == "out") config.out_dir = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

ExperimentConfig config_from_text(std::istream& in) {
    ExperimentConfig config;
    for (const auto& [key, value] : parse_config_text(in)) set_config_value(config, key, value);
    return config;
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::optional<double> Report::aggregate(const std::string& name) const {
    for (const auto& [key, value] : aggregates) {
        if (key == name) return value;
    }
    return std::nullopt;
}

unsigned worker_count() {
    const char* env = std::getenv("HYPERGIANT_WORKERS");
    if (!env) return 1;
    unsigned value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) return 1;
    return value;
}

void parallel_trials(std::uint64_t count, const std::function<void(std::uint64_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < count; ++t) body(t);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t t = next++; t < count; t = next++) {
                try {
                    body(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

Report run_census_sweep(const ExperimentConfig& config) {
    Report report;
    report.kind = "census";
    report.config = config;
    const double p = config.edge_probability();
    report.trials.resize(config.trials);
    parallel_trials(config.trials, [&](std::uint64_t t) {
        SeededStream stream = trial_stream(config, t);
        EdgeSet edges;
        try {
            edges = sample_hypergraph(config.n, config.k, p, stream, config.edge_cap);
        } catch (const std::length_error& e) {
            std::ostringstream msg;
            msg << "census at n=" << config.n << ", k=" << config.k << ", p=" << format_double(p) << ": " << e.what();
            throw std::length_error(msg.str());
        }
        const ComponentCensus census = build_census(edges, config.j);
        TrialRecord& r = report.trials[t];
        r.trial = t;
        r.stream_id = stream.stream_id();
        r.largest = census.largest;
        r.second_largest = census.second_largest;
        r.total_nullity = total_nullity(census);
        std::map<std::int64_t, std::uint64_t> histogram;
        for (const auto& c : census.components) {
            ++histogram[c.nullity];
            if (is_hypertree(c)) ++r.hypertrees;
        }
        r.nullity_histogram.assign(histogram.begin(), histogram.end());
    });

    const double jsets = binom_real(config.n, config.j);
    const double mean_largest = mean_of(report.trials, &TrialRecord::largest);
    std::uint64_t max_largest = 0;
    std::uint64_t small_second = 0;
    const double second_fraction = config.j == 1 ? 0.05 : 0.10;
    for (const auto& r : report.trials) {
        max_largest = std::max(max_largest, r.largest);
        if (static_cast<double>(r.second_largest) <= second_fraction * static_cast<double>(r.largest)) ++small_second;
    }
    auto& agg = report.aggregates;
    agg.emplace_back("p", p);
    agg.emplace_back("mean_largest", mean_largest);
    agg.emplace_back("std_error_largest", std_error_of(report.trials, &TrialRecord::largest));
    agg.emplace_back("mean_largest_fraction", mean_largest / jsets);
    agg.emplace_back("max_largest", static_cast<double>(max_largest));
    agg.emplace_back("mean_second_largest", mean_of(report.trials, &TrialRecord::second_largest));

    if (p == 0.0) {
        add_check(report, "empty_hypergraph", static_cast<double>(max_largest), 0.0, max_largest == 0,
                  "p = 0 leaves every j-set a singleton");
        return report;
    }
    if (config.p || config.trials == 0) return report;
    if (config.regime == Regime::super) {
        const GiantPrediction g = giant_prediction(config.n, config.k, config.j, config.eps);
        const double tolerance = config.j == 1 ? 0.10 : 0.15;
        agg.emplace_back("solver_size", g.solver_size);
        agg.emplace_back("solver_survival", g.survival);
        agg.emplace_back("asymptotic_size", g.asymptotic_size);
        add_check(report, "giant_size", mean_largest, g.solver_size,
                  std::fabs(mean_largest - g.solver_size) <= tolerance * g.solver_size,
                  "mean largest within " + percent(tolerance) + " of solver size");
        const double required = config.j == 1 ? 1.0 : 0.9;
        const double share = static_cast<double>(small_second) / static_cast<double>(config.trials);
        add_check(report, "second_largest_small", share, required, share >= required,
                  "share of trials with second largest <= " + percent(second_fraction) + " of largest");
    } else {
        const double bound = subcritical_bound(config.n, config.j, config.eps);
        agg.emplace_back("subcritical_bound", bound);
        add_check(report, "subcritical_bound", static_cast<double>(max_largest), bound,
                  static_cast<double>(max_largest) <= bound, "largest component in every trial");
    }
    return report;
}

Report run_exploration_sweep(const ExperimentConfig& config) {
    Report report;
    report.kind = "explore";
    report.config = config;
    const double p = config.edge_probability();
    const StopParams stop = stop_params_for(config);
    const TheoryConstants constants = build_constants(config.k, config.j, config.eps);
    const std::vector<double> kappa(constants.C.begin() + 1, constants.C.end());
    const Rank jsets = binom(config.n, static_cast<std::uint64_t>(config.j));
    const bool indexed = stop.degree_index;

    report.trials.resize(config.trials);
    parallel_trials(config.trials, [&](std::uint64_t t) {
        SeededStream stream = trial_stream(config, t);
        EdgeOracle oracle = EdgeOracle::lazy(config.n, config.k, p, stream.substream(0));
        SeededStream picker = stream.substream(1);
        const VertexSet start = colex_unrank(picker.below(jsets), config.j, config.n);
        const ExplorationTrace trace = explore(start, oracle, config.j, stop);

        TrialRecord& r = report.trials[t];
        r.trial = t;
        r.stream_id = stream.stream_id();
        r.stop_reason = trace.stop_reason;
        r.T = trace.T;
        r.T_large = trace.T_large;
        r.component_size = trace.generations.back().component_size;
        if (indexed) {
            r.degree_violations = check_theorem3(trace, constants, stop.delta).size();
            if (trace.stopped_by_S()) r.corollary4_ok = check_corollary4(trace, stop.xi, kappa);
            r.ledger_issues = check_ledger(trace).size();
        }
        r.staybig_violations = check_staybig(trace, config.n).size();
        r.staybig_rounds = staybig_applicable_rounds(trace, config.n);
        if (stop.mode == StopMode::run_to_T_large) {
            r.size_bound_ok = check_size_at_T_large(trace, stop.lambda, config.n, config.j);
        }
    });

    std::uint64_t s1 = 0, s_any = 0, degree = 0, ledger = 0, cor4_fail = 0, stay = 0, stay_rounds = 0, size_ok = 0;
    for (const auto& r : report.trials) {
        if (r.stop_reason == StopReason::S1) ++s1;
        if (r.stop_reason == StopReason::S2 || r.stop_reason == StopReason::S3) ++s_any;
        degree += r.degree_violations;
        ledger += r.ledger_issues;
        if (r.corollary4_ok && !*r.corollary4_ok) ++cor4_fail;
        stay += r.staybig_violations;
        stay_rounds += r.staybig_rounds;
        if (r.size_bound_ok && *r.size_bound_ok) ++size_ok;
    }
    const auto trials = static_cast<double>(std::max<std::uint64_t>(config.trials, 1));
    const double ps = static_cast<double>(s_any) / trials;
    const double ps_se = proportion_se(ps, config.trials);
    const double s1_share = static_cast<double>(s1) / trials;
    const std::int64_t c = excess_of(config.k, config.j);
    const double survival = giant_prediction(config.n, config.k, config.j, config.eps).survival;

    auto& agg = report.aggregates;
    agg.emplace_back("p", p);
    agg.emplace_back("lambda", stop.lambda);
    agg.emplace_back("xi", stop.xi);
    agg.emplace_back("stop_frequency", ps);
    agg.emplace_back("stop_frequency_std_error", ps_se);
    agg.emplace_back("s1_share", s1_share);
    agg.emplace_back("solver_survival", survival);
    agg.emplace_back("degree_violations", static_cast<double>(degree));
    agg.emplace_back("ledger_issues", static_cast<double>(ledger));
    agg.emplace_back("corollary4_failures", static_cast<double>(cor4_fail));
    agg.emplace_back("staybig_violations", static_cast<double>(stay));
    agg.emplace_back("staybig_rounds", static_cast<double>(stay_rounds));
    agg.emplace_back("mean_component_size", mean_of(report.trials, &TrialRecord::component_size));
    if (config.trials == 0) return report;

    if (indexed) {
        add_check(report, "degree_bound", static_cast<double>(degree), 0.0, degree == 0,
                  "generation l-degree bound violations over all rounds up to T");
        add_check(report, "ledger_identity", static_cast<double>(ledger), 0.0, ledger == 0,
                  "jump + pivot attribution equals generation l-degree and event caps hold");
        add_check(report, "degree_bound_at_T", static_cast<double>(cor4_fail), 0.0, cor4_fail == 0,
                  "l-degrees at T within kappa_l (|G_T| / n^l + xi) on S-stopped trials");
    }
    if (stop.mode == StopMode::run_to_T_large) {
        const double share = static_cast<double>(size_ok) / trials;
        agg.emplace_back("size_bound_share", share);
        add_check(report, "size_at_T_large", share, 0.99, share >= 0.99, "|C(T_large)| <= 3 lambda n^j");
        const double rate = stay_rounds ? static_cast<double>(stay) / static_cast<double>(stay_rounds) : 0.0;
        add_check(report, "generation_monotonicity", rate, 0.01, rate < 0.01,
                  "share of rounds with |G_i| >= n whose successor is smaller");
    }
    if (config.p) return report;
    if (config.regime == Regime::super) {
        const double se = std::max(ps_se, 1.0 / trials);
        add_check(report, "stop_frequency", ps, survival, std::fabs(ps - survival) <= 3.0 * se,
                  "P(S2 or S3) within 3 standard errors of the solver survival");
    } else {
        const double target = 1.0 - 2.0 * config.eps / static_cast<double>(c) - 5.0 * proportion_se(s1_share, config.trials);
        add_check(report, "subcritical_s1", s1_share, target, s1_share >= target, "share of trials ending by S1");
    }
    return report;
}

Report run_branching_suite(const ExperimentConfig& config) {
    Report report;
    report.kind = "branching";
    report.config = config;
    const double p = config.edge_probability();
    const std::uint64_t cap = config.progeny_cap ? config.progeny_cap : default_progeny_cap(config.eps);
    const std::uint64_t trials = config.branching_trials;
    const StopParams stop = stop_params_for(config);
    const double gamma = std::sqrt(stop.lambda * config.eps);
    const SeededStream root(config.seed, config.seed);
    auto& agg = report.aggregates;

    const OffspringLaw upper = make_law(LawKind::upper, config.n, config.k, config.j, p);
    const OffspringLaw lower = make_law(LawKind::lower, config.n, config.k, config.j, p, std::nullopt, gamma);
    const double survival =
        extinction_fixed_point(static_cast<double>(upper.N), p, static_cast<std::int64_t>(upper.m), 0.0).survival;
    SeededStream upper_stream = root.substream(1);
    SeededStream lower_stream = root.substream(2);
    const CapSensitivity up = survival_cap_sensitivity(upper, cap, trials, upper_stream);
    const Estimate low = survival_mc(lower, cap, trials, lower_stream);

    agg.emplace_back("p", p);
    agg.emplace_back("progeny_cap", static_cast<double>(cap));
    agg.emplace_back("gamma", gamma);
    agg.emplace_back("solver_survival", survival);
    agg.emplace_back("upper_mean", upper.mean());
    agg.emplace_back("upper_survival", up.at_cap.value);
    agg.emplace_back("upper_survival_std_error", up.at_cap.std_error);
    agg.emplace_back("upper_survival_4cap", up.at_4cap.value);
    agg.emplace_back("lower_mean", lower.mean());
    agg.emplace_back("lower_survival", low.value);
    agg.emplace_back("lower_survival_std_error", low.std_error);

    const double floor_se = 1.0 / static_cast<double>(trials);
    add_check(report, "cap_sensitivity", up.at_4cap.value, up.at_cap.value, up.agree,
              "upper survival at cap and 4 x cap within 2 combined standard errors");
    add_check(report, "upper_vs_solver", up.at_cap.value, survival,
              std::fabs(up.at_cap.value - survival) <= 3.0 * std::max(up.at_cap.std_error, floor_se),
              "upper-law survival within 3 standard errors of the solver");
    add_check(report, "lower_below_upper", low.value, up.at_cap.value,
              low.value <= up.at_cap.value + 3.0 * std::max(std::hypot(low.std_error, up.at_cap.std_error), floor_se),
              "lower-law survival does not exceed upper-law survival");

    for (int l = 1; l < config.j; ++l) {
        const OffspringLaw pivot = make_law(LawKind::pivot, config.n, config.k, config.j, p, l);
        SeededStream stream = root.substream(10 + static_cast<std::uint64_t>(l));
        const Estimate e = survival_mc(pivot, cap, trials, stream);
        const std::string name = "pivot_l" + std::to_string(l);
        agg.emplace_back(name + "_mean", pivot.mean());
        agg.emplace_back(name + "_survival", e.value);
        add_check(report, name + "_subcritical", e.value, 0.0, pivot.mean() < 1.0 && e.value <= 3.0 * e.std_error,
                  "pivot law has mean below 1 and survival indistinguishable from 0");
    }

    if (config.regime == Regime::super && upper.mean() > 1.0 && upper.mean() < 2.0) {
        const OffspringLaw dual = make_law(LawKind::dual, config.n, config.k, config.j, p);
        SeededStream stream = root.substream(3);
        const Estimate e = mean_progeny_mc(dual, trials, stream);
        const double target = 1.0 / (upper.mean() - 1.0);
        agg.emplace_back("dual_mean", dual.mean());
        agg.emplace_back("dual_mean_progeny", e.value);
        agg.emplace_back("dual_mean_progeny_std_error", e.std_error);
        add_check(report, "dual_progeny", e.value, target, std::fabs(e.value - target) <= 0.1 * target,
                  "dual-law mean total progeny within 10% of 1/eps");
    }
    return report;
}

Report run_sweep(const ExperimentConfig& config) {
    Report report;
    report.kind = "sweep";
    report.config = config;
    for (double eps : config.eps_grid) {
        for (Regime regime : {Regime::sub, Regime::super}) {
            ExperimentConfig point = config;
            point.eps = eps;
            point.regime = regime;
            point.p.reset();
            const std::string prefix = "eps=" + format_double(eps) + "/" + to_string(regime) + "/";
            const Report explore = run_exploration_sweep(point);
            const Report branching = run_branching_suite(point);
            for (const Report* part : {&explore, &branching}) {
                for (const auto& [name, value] : part->aggregates) {
                    report.aggregates.emplace_back(prefix + part->kind + "/" + name, value);
                }
                for (Check check : part->checks) {
                    check.name = prefix + part->kind + "/" + check.name;
                    report.checks.push_back(std::move(check));
                }
            }
            if (regime == Regime::super && point.trials > 0) {
                const double ps = *explore.aggregate("stop_frequency");
                const double ps_se = *explore.aggregate("stop_frequency_std_error");
                const double low = *branching.aggregate("lower_survival");
                const double low_se = *branching.aggregate("lower_survival_std_error");
                const double up = *branching.aggregate("upper_survival");
                const double up_se = *branching.aggregate("upper_survival_std_error");
                const bool ok = ps >= low - 3.0 * std::hypot(ps_se, low_se) && ps <= up + 3.0 * std::hypot(ps_se, up_se);
                add_check(report, prefix + "bracket", ps, 0.5 * (low + up), ok,
                          "stop frequency between lower-law and upper-law survival within joint error bars");
            }
        }
    }
    return report;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

void write_trials_csv(std::ostream& out, const Report& report) {
    out << "#schema=hypergiant.trials/1\n#kind=" << report.kind << '\n';
    out << "trial,stream_id,largest,second_largest,total_nullity,hypertrees,nullity_histogram,stop_reason,T,T_large,"
           "component_size,degree_violations,staybig_violations,staybig_rounds,size_bound_ok,corollary4_ok,"
           "ledger_issues\n";
    for (const auto& r : report.trials) {
        std::string histogram;
        for (const auto& [nu, count] : r.nullity_histogram) {
            if (!histogram.empty()) histogram += ';';
            histogram += std::to_string(nu) + ':' + std::to_string(count);
        }
        out << r.trial << ',' << r.stream_id << ',' << r.largest << ',' << r.second_largest << ',' << r.total_nullity
            << ',' << r.hypertrees << ',' << histogram << ',' << to_string(r.stop_reason) << ',' << r.T << ','
            << (r.T_large ? std::to_string(*r.T_large) : std::string()) << ',' << r.component_size << ','
            << r.degree_violations << ',' << r.staybig_violations << ',' << r.staybig_rounds << ','
            << optional_text(r.size_bound_ok) << ',' << optional_text(r.corollary4_ok) << ',' << r.ledger_issues
            << '\n';
    }
}

void write_summary_csv(std::ostream& out, const Report& report) {
    out << "#schema=hypergiant.summary/1\n#kind=" << report.kind << '\n';
    out << "section,name,value,target,passed,detail\n";
    for (const auto& [name, value] : report.aggregates) out << "aggregate," << name << ',' << format_double(value) << ",,,\n";
    for (const auto& c : report.checks) {
        out << "check," << c.name << ',' << format_double(c.observed) << ',' << format_double(c.target) << ','
            << (c.passed ? 1 : 0) << ',' << c.detail << '\n';
    }
}

void write_report_json(std::ostream& out, const Report& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema"] = "hypergiant.report/1";
    doc["kind"] = report.kind;
    doc["config"] = report.config.to_text();
    ordered_json trials = ordered_json::array();
    for (const auto& r : report.trials) {
        ordered_json row;
        row["trial"] = r.trial;
        row["stream_id"] = r.stream_id;
        if (report.kind == "census") {
            row["largest"] = r.largest;
            row["second_largest"] = r.second_largest;
            row["total_nullity"] = r.total_nullity;
            row["hypertrees"] = r.hypertrees;
            ordered_json histogram = ordered_json::array();
            for (const auto& [nu, count] : r.nullity_histogram) histogram.push_back({nu, count});
            row["nullity_histogram"] = histogram;
        } else {
            row["stop_reason"] = to_string(r.stop_reason);
            row["T"] = r.T;
            row["T_large"] = r.T_large ? ordered_json(*r.T_large) : ordered_json(nullptr);
            row["component_size"] = r.component_size;
            row["degree_violations"] = r.degree_violations;
            row["staybig_violations"] = r.staybig_violations;
            row["staybig_rounds"] = r.staybig_rounds;
            row["size_bound_ok"] = r.size_bound_ok ? ordered_json(*r.size_bound_ok) : ordered_json(nullptr);
            row["corollary4_ok"] = r.corollary4_ok ? ordered_json(*r.corollary4_ok) : ordered_json(nullptr);
            row["ledger_issues"] = r.ledger_issues;
        }
        trials.push_back(std::move(row));
    }
    doc["trials"] = std::move(trials);
    ordered_json aggregates = ordered_json::object();
    for (const auto& [name, value] : report.aggregates) aggregates[name] = value;
    doc["aggregates"] = std::move(aggregates);
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"observed", c.observed}, {"target", c.target}, {"passed", c.passed},
                          {"detail", c.detail}});
    }
    doc["checks"] = std::move(checks);
    doc["passed"] = report.passed();
    out << doc.dump(2) << '\n';
}

}  // namespace hypergiant
