#include "hypergiant/branching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypergiant/explorer.hpp"

namespace hypergiant {

std::string to_string(LawKind kind) {
    switch (kind) {
        case LawKind::upper: return "upper";
        case LawKind::lower: return "lower";
        case LawKind::pivot: return "pivot";
        case LawKind::dual: return "dual";
    }
    return "?";
}

LawKind parse_law_kind(const std::string& text) {
    if (text == "upper") return LawKind::upper;
    if (text == "lower") return LawKind::lower;
    if (text == "pivot") return LawKind::pivot;
    if (text == "dual") return LawKind::dual;
    throw std::invalid_argument("unknown law '" + text + "' (expected upper, lower, pivot or dual)");
}

namespace {

std::uint64_t trials_for(std::uint64_t population, std::uint64_t per_individual) {
    if (per_individual != 0 && population > std::numeric_limits<std::uint64_t>::max() / per_individual) {
        throw std::overflow_error("branching: trial count overflows 64 bits");
    }
    return population * per_individual;
}

}  // namespace

std::uint64_t OffspringLaw::draw(SeededStream& stream) const { return m * binomial_draw(stream, N, p); }

OffspringLaw make_law(LawKind kind, Vertex n, int k, int j, double p, std::optional<int> level,
                      std::optional<double> gamma) {
    if (j < 1 || k <= j || k > kMaxArity || static_cast<Vertex>(k) > n) {
        throw std::invalid_argument("make_law: need 1 <= j <= k-1 <= n-1");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("make_law: p must lie in [0, 1]");
    if (kind != LawKind::pivot && level) throw std::invalid_argument("make_law: level only applies to the pivot law");
    if (kind != LawKind::lower && gamma) throw std::invalid_argument("make_law: gamma only applies to the lower law");

    const auto u = [](int x) { return static_cast<std::uint64_t>(x); };
    OffspringLaw law;
    law.kind = kind;
    law.p = p;
    law.N = to_u64(binom(n, u(k - j)));
    law.m = to_u64(binom(u(k), u(j))) - 1;
    switch (kind) {
        case LawKind::upper: break;
        case LawKind::lower: {
            if (!gamma || !(*gamma > 0.0 && *gamma < 1.0)) throw std::invalid_argument("make_law: lower law needs gamma in (0, 1)");
            law.N = static_cast<std::uint64_t>(std::ceil((1.0 - *gamma) * static_cast<double>(law.N)));
            break;
        }
        case LawKind::pivot: {
            if (!level || *level < 1 || *level > j - 1) throw std::invalid_argument("make_law: pivot law needs level in [1, j-1]");
            law.m = to_u64(binom(u(k - *level), u(j - *level))) - 1;
            if (law.m == 0) throw std::invalid_argument("make_law: pivot multiplier is zero at this level");
            break;
        }
        case LawKind::dual: {
            const double eps = law.mean() - 1.0;
            if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("make_law: dual law needs an upper mean in (1, 2)");
            law.p = (1.0 - eps) / (static_cast<double>(law.m) * static_cast<double>(law.N));
            break;
        }
    }
    return law;
}

GWOutcome gw_run(const OffspringLaw& law, std::uint64_t progeny_cap, SeededStream& stream) {
    if (progeny_cap < 1) throw std::invalid_argument("gw_run: progeny cap must be at least 1");
    GWOutcome out;
    if (progeny_cap == 1) {
        out.survived_to_cap = true;  // the root alone fills the cap
        return out;
    }
    std::uint64_t alive = 1;
    while (alive > 0) {
        const std::uint64_t children = law.m * binomial_draw(stream, trials_for(alive, law.N), law.p);
        if (children == 0) break;
        ++out.generations;
        if (children >= progeny_cap - out.total_progeny) {
            out.total_progeny = progeny_cap;
            out.survived_to_cap = true;
            break;
        }
        out.total_progeny += children;
        alive = children;
    }
    return out;
}

std::uint64_t default_progeny_cap(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("default_progeny_cap: eps must be positive");
    return std::max<std::uint64_t>(10000, static_cast<std::uint64_t>(std::ceil(10.0 / (eps * eps))));
}

Estimate survival_mc(const OffspringLaw& law, std::uint64_t progeny_cap, std::uint64_t trials, SeededStream& stream) {
    if (trials < 100) throw std::invalid_argument("survival_mc: need at least 100 trials");
    std::uint64_t alive = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededStream sub = stream.substream(t);
        if (gw_run(law, progeny_cap, sub).survived_to_cap) ++alive;
    }
    Estimate e;
    e.trials = trials;
    e.value = static_cast<double>(alive) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

CapSensitivity survival_cap_sensitivity(const OffspringLaw& law, std::uint64_t progeny_cap, std::uint64_t trials,
                                        SeededStream& stream) {
    CapSensitivity out;
    // same substreams at both caps, so a run that dies before the smaller cap dies identically
    out.at_cap = survival_mc(law, progeny_cap, trials, stream);
    out.at_4cap = survival_mc(law, trials_for(progeny_cap, 4), trials, stream);
    const double se = std::hypot(out.at_cap.std_error, out.at_4cap.std_error);
    out.agree = std::fabs(out.at_cap.value - out.at_4cap.value) <= 2.0 * se;
    return out;
}

Estimate mean_progeny_mc(const OffspringLaw& law, std::uint64_t trials, SeededStream& stream,
                         std::uint64_t safety_cap) {
    if (!(law.mean() < 1.0)) throw std::invalid_argument("mean_progeny_mc: law must be subcritical (mean < 1)");
    if (trials < 1) throw std::invalid_argument("mean_progeny_mc: need at least one trial");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededStream sub = stream.substream(t);
        GWOutcome run = gw_run(law, safety_cap, sub);
        if (run.survived_to_cap) {
            throw std::runtime_error("mean_progeny_mc: trial " + std::to_string(t) + " reached the safety cap of " +
                                     std::to_string(safety_cap) + " (law mean " + std::to_string(law.mean()) + ")");
        }
        const auto x = static_cast<double>(run.total_progeny);
        sum += x;
        sum_sq += x * x;
    }
    const auto n = static_cast<double>(trials);
    Estimate e;
    e.trials = trials;
    e.value = sum / n;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - n * e.value * e.value) / (n - 1.0)) : 0.0;
    e.std_error = std::sqrt(var / n);
    return e;
}

CoupledRun coupled_domination_run(const VertexSet& start, Vertex n, int k, int j, double p, const StopParams& params,
                                  SeededStream& stream) {
    const OffspringLaw law = make_law(LawKind::upper, n, k, j, p);
    EdgeOracle oracle = EdgeOracle::lazy(n, k, p, stream.substream(0));
    SeededStream padding = stream.substream(1);

    CoupledRun out;
    out.saturation = to_u64(binom(n, static_cast<std::uint64_t>(j)));
    // bp[i] is the tracked size of branching generation i+1; bp[0] = 1 is the root
    std::vector<std::uint64_t> bp{1};
    auto add_children = [&](std::uint64_t round, std::uint64_t children) {
        if (bp.size() <= round) bp.resize(round + 1, 0);
        bp[round] = std::min(out.saturation, bp[round] + children);
        if (bp[round] == out.saturation) out.saturated = true;
    };
    auto finish_round = [&](std::uint64_t round, std::uint64_t bfs_size) {
        // surplus individuals have no BFS partner and draw all N trials from the padding stream
        const std::uint64_t surplus = bp[round - 1] - bfs_size;
        add_children(round, surplus > 0 ? law.m * binomial_draw(padding, trials_for(surplus, law.N), p) : 0);
    };

    ExplorationTrace trace = explore(start, oracle, j, params, [&](const Expansion& e) {
        const std::uint64_t fresh = binomial_draw(padding, law.N - e.queries, p);
        add_children(e.generation, law.m * (e.edges + fresh));
    });

    for (const auto& g : trace.generations) out.bfs_gen_sizes.push_back(g.size());
    // every BFS generation that was expanded produced the next branching generation
    for (std::uint64_t round = 1; round < out.bfs_gen_sizes.size(); ++round) {
        if (bp.size() <= round) add_children(round, 0);
        const std::uint64_t bfs_size = out.bfs_gen_sizes[round - 1];
        if (bp[round - 1] < bfs_size) break;  // domination already failed; surplus undefined
        finish_round(round, bfs_size);
    }
    out.bp_gen_sizes.assign(bp.begin(), bp.begin() + static_cast<std::ptrdiff_t>(std::min(bp.size(), out.bfs_gen_sizes.size())));
    out.dominated = out.bp_gen_sizes.size() == out.bfs_gen_sizes.size();
    for (std::size_t i = 0; out.dominated && i < out.bfs_gen_sizes.size(); ++i) {
        if (out.bfs_gen_sizes[i] > out.bp_gen_sizes[i]) out.dominated = false;
    }
    out.stop_reason = trace.stop_reason;
    return out;
}

}  // namespace hypergiant
