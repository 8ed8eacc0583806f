#ifndef HYPERGIANT_HARNESS_HPP
#define HYPERGIANT_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/params.hpp"

namespace hypergiant {

enum class Regime { sub, super };

std::string to_string(Regime regime);
Regime parse_regime(const std::string& text);

/**
 * Everything a run depends on. Text form is one `key = value` per line;
 * blank lines and `#` comments are ignored. See README for the key list.
 */
struct ExperimentConfig {
    Vertex n = 500;
    int k = 3;
    int j = 2;
    Regime regime = Regime::super;
    double eps = 0.1;
    /// Overrides the edge probability (1 +/- eps) p_hat.
    std::optional<double> p;
    std::uint64_t trials = 10;
    std::uint64_t seed = 1;

    std::optional<double> lambda;
    double delta = 0.15;
    std::optional<double> xi;
    StopMode mode = StopMode::run_to_T;
    bool degree_index = true;

    /// 0 selects default_progeny_cap(eps).
    std::uint64_t progeny_cap = 0;
    std::uint64_t branching_trials = 10000;
    double edge_cap = 5.0e7;  // expected-edge guard for whole-hypergraph sampling
    std::vector<double> eps_grid{0.05, 0.1, 0.2};

    std::string format = "csv";
    std::string out_dir;

    double edge_probability() const;
    std::string to_text() const;
};

/// Sets one key; throws std::invalid_argument for unknown keys or bad values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);
/// Parses `key = value` lines into an ordered key map (later lines win).
std::map<std::string, std::string> parse_config_text(std::istream& in);
ExperimentConfig config_from_text(std::istream& in);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t stream_id = 0;
    // census
    std::uint64_t largest = 0;
    std::uint64_t second_largest = 0;
    std::int64_t total_nullity = 0;
    std::uint64_t hypertrees = 0;
    std::vector<std::pair<std::int64_t, std::uint64_t>> nullity_histogram;
    // exploration
    StopReason stop_reason = StopReason::none;
    std::uint64_t T = 0;
    std::optional<std::uint64_t> T_large;
    std::uint64_t component_size = 0;
    std::uint64_t degree_violations = 0;
    std::uint64_t staybig_violations = 0;
    std::uint64_t staybig_rounds = 0;
    std::optional<bool> size_bound_ok;
    std::optional<bool> corollary4_ok;
    std::uint64_t ledger_issues = 0;
};

struct Check {
    std::string name;
    double observed = 0.0;
    double target = 0.0;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string kind;
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    std::vector<std::pair<std::string, double>> aggregates;
    std::vector<Check> checks;

    bool passed() const;
    std::optional<double> aggregate(const std::string& name) const;
};

/// Sample + census per trial; checks the giant size (super) or the subcritical bound (sub).
Report run_census_sweep(const ExperimentConfig& config);
/// Random start + exploration per trial with all checkers; P(S) against the solver.
Report run_exploration_sweep(const ExperimentConfig& config);
/// Upper, lower, pivot and dual laws against the solver and 1/eps.
Report run_branching_suite(const ExperimentConfig& config);
/// Exploration and branching over eps_grid in both regimes, one aggregate block per point.
Report run_sweep(const ExperimentConfig& config);

/// Locale-independent text with 17 significant digits.
std::string format_double(double value);

/// Trials as CSV rows under a versioned header.
void write_trials_csv(std::ostream& out, const Report& report);
/// Aggregates and checks as CSV rows.
void write_summary_csv(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);

/// HYPERGIANT_WORKERS, or 1 when unset or invalid.
unsigned worker_count();
/// Runs body(t) for t in [0, count) across worker_count() threads; rethrows the first failure.
void parallel_trials(std::uint64_t count, const std::function<void(std::uint64_t)>& body);

}  // namespace hypergiant

#endif  // HYPERGIANT_HARNESS_HPP
