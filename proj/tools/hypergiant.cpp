#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypergiant/harness.hpp"
#include "hypergiant/theory.hpp"

using namespace hypergiant;

namespace {

struct Flags {
    std::optional<Vertex> n;
    std::optional<int> k;
    std::optional<int> j;
    std::optional<double> eps;
    std::optional<std::string> regime;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<double> p;
    std::optional<std::string> mode;
    std::optional<double> lambda;
    std::optional<double> delta;
    std::optional<std::uint64_t> branching_trials;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--n", f.n, "number of vertices");
    cmd->add_option("--k", f.k, "edge size");
    cmd->add_option("--j", f.j, "connectivity order");
    cmd->add_option("--eps", f.eps, "distance from criticality");
    cmd->add_option("--regime", f.regime, "sub or super")->check(CLI::IsMember({"sub", "super"}));
    cmd->add_option("--trials", f.trials, "number of trials");
    cmd->add_option("--seed", f.seed, "base seed");
    cmd->add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "output directory (stdout when absent)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--p", f.p, "edge probability override");
    cmd->add_option("--mode", f.mode, "exploration stop mode: T, T_large or exhaust");
    cmd->add_option("--lambda", f.lambda, "stopping parameter override");
    cmd->add_option("--delta", f.delta, "degree-bound exponent");
    cmd->add_option("--branching-trials", f.branching_trials, "Monte Carlo trials per branching law");
}

std::string text_of(double v) { return format_double(v); }

ExperimentConfig merge(const Flags& f) {
    ExperimentConfig config;
    if (f.config) {
        std::ifstream in(*f.config);
        config = config_from_text(in);
    }
    auto set = [&](const char* key, const auto& value) {
        if (!value) return;
        std::ostringstream text;
        if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, double>) text << text_of(*value);
        else text << *value;
        set_config_value(config, key, text.str());
    };
    set("n", f.n);
    set("k", f.k);
    set("j", f.j);
    set("eps", f.eps);
    set("regime", f.regime);
    set("trials", f.trials);
    set("seed", f.seed);
    set("out", f.out);
    set("format", f.format);
    set("p", f.p);
    set("mode", f.mode);
    set("lambda", f.lambda);
    set("delta", f.delta);
    set("branching_trials", f.branching_trials);
    return config;
}

void emit_report(const Report& report) {
    const ExperimentConfig& config = report.config;
    const bool json = config.format == "json";
    if (config.out_dir.empty()) {
        if (json) {
            write_report_json(std::cout, report);
        } else {
            if (!report.trials.empty()) {
                write_trials_csv(std::cout, report);
                std::cout << '\n';
            }
            write_summary_csv(std::cout, report);
        }
        return;
    }
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / (report.kind + "_config.txt")) << config.to_text();
    if (json) {
        std::ofstream out(dir / (report.kind + ".json"));
        write_report_json(out, report);
    } else {
        std::ofstream trials(dir / (report.kind + "_trials.csv"));
        write_trials_csv(trials, report);
        std::ofstream summary(dir / (report.kind + "_summary.csv"));
        write_summary_csv(summary, report);
    }
    std::cerr << report.kind << ": wrote " << dir.string() << '\n';
}

int print_constants(const ExperimentConfig& config) {
    const TheoryConstants t = build_constants(config.k, config.j, config.eps);
    if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["k"] = t.k;
        doc["j"] = t.j;
        doc["eps"] = t.eps;
        doc["alpha"] = t.alpha;
        doc["c"] = t.c;
        doc["levels"] = nlohmann::ordered_json::array();
        for (int l = 0; l < t.j; ++l) {
            const auto i = static_cast<std::size_t>(l);
            doc["levels"].push_back({{"l", l}, {"c_l", t.c_l[i]}, {"w0", t.w0[i]}, {"r", t.r[i]},
                                     {"r_prime", t.r_prime[i]}, {"C_prime", t.C_prime[i]}, {"C", t.C[i]}});
        }
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    std::cout << "#schema=hypergiant.constants/1\n#k=" << t.k << " j=" << t.j << " eps=" << text_of(t.eps)
              << " alpha=" << text_of(t.alpha) << " c=" << t.c << '\n';
    std::cout << "l,c_l,w0,r,r_prime,C_prime,C\n";
    for (int l = 0; l < t.j; ++l) {
        const auto i = static_cast<std::size_t>(l);
        std::cout << l << ',' << t.c_l[i] << ',' << t.w0[i] << ',' << text_of(t.r[i]) << ',' << text_of(t.r_prime[i])
                  << ',' << text_of(t.C_prime[i]) << ',' << text_of(t.C[i]) << '\n';
    }
    return 0;
}

int print_prediction(const ExperimentConfig& config) {
    const GiantPrediction g = giant_prediction(config.n, config.k, config.j, config.eps);
    const DefaultParams d = default_params(config.n, config.k, config.j, config.eps, config.delta);
    const std::pair<const char*, double> rows[] = {
        {"critical_p", g.critical_p},
        {"p", g.p},
        {"survival", g.survival},
        {"solver_size", g.solver_size},
        {"asymptotic_size", g.asymptotic_size},
        {"jsets", binom_real(config.n, config.j)},
        {"lambda", d.stop.lambda},
        {"xi", d.stop.xi},
        {"gamma", d.gamma},
        {"component_cutoff", d.stop.component_cutoff},
        {"generation_cutoff", d.stop.generation_cutoff},
        {"subcritical_bound", subcritical_bound(config.n, config.j, config.eps)},
    };
    if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["n"] = config.n;
        doc["k"] = config.k;
        doc["j"] = config.j;
        doc["eps"] = config.eps;
        for (const auto& [name, value] : rows) doc[name] = value;
        doc["warnings"] = d.warnings;
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    std::cout << "#schema=hypergiant.predict/1\n#n=" << config.n << " k=" << config.k << " j=" << config.j
              << " eps=" << text_of(config.eps) << '\n';
    std::cout << "name,value\n";
    for (const auto& [name, value] : rows) std::cout << name << ',' << text_of(value) << '\n';
    for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergiant: j-components of random k-uniform hypergraphs"};
    app.require_subcommand(1, 1);
    Flags flags;
    const char* names[][2] = {
        {"census", "sample hypergraphs and census their j-components"},
        {"explore", "breadth-first explorations with degree-bound and ledger checks"},
        {"branching", "branching-law Monte Carlo against the fixed point"},
        {"constants", "degree-bound constants C_l"},
        {"predict", "critical probability, survival and giant size"},
        {"sweep", "exploration and branching over an eps grid in both regimes"},
    };
    for (const auto& [name, help] : names) add_flags(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig config;
    try {
        config = merge(flags);
        if (command == "constants") return print_constants(config);
        if (command == "predict") return print_prediction(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    Report report;
    try {
        if (command == "census") report = run_census_sweep(config);
        else if (command == "explore") report = run_exploration_sweep(config);
        else if (command == "branching") report = run_branching_suite(config);
        else report = run_sweep(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    emit_report(report);
    for (const auto& c : report.checks) {
        if (!c.passed) std::cerr << "check failed: " << c.name << " (observed " << text_of(c.observed) << ", target "
                                 << text_of(c.target) << ")\n";
    }
    return report.passed() ? 0 : 1;
}
