#include "hypergiant/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hypergiant/rank_map.hpp"

namespace hypergiant {

namespace {

using Member = std::pair<Rank, VertexSet>;

void index_degrees(GenerationRecord& record, const std::vector<Member>& members, int j, const BinomTable& table,
                   bool degree_index) {
    record.max_degree.assign(static_cast<std::size_t>(degree_index ? j : 1), 0);
    record.max_degree[0] = members.size();
    record.degree.assign(static_cast<std::size_t>(j), {});
    if (!degree_index) return;
    for (int l = 1; l < j; ++l) {
        RankMap<std::uint32_t> counts(members.size() * 2);
        for (const auto& [rank, set] : members) {
            visit_subsets(set, l, [&](const VertexSet& sub) { ++counts[colex_rank(sub, table)]; });
        }
        auto& degree = record.degree[static_cast<std::size_t>(l)];
        degree = counts.sorted_items();
        std::uint64_t best = 0;
        for (const auto& [rank, count] : degree) best = std::max<std::uint64_t>(best, count);
        record.max_degree[static_cast<std::size_t>(l)] = best;
    }
}

struct EventCount {
    Rank l_set;
    std::uint32_t count;
    bool pivot;
};

}  // namespace

std::vector<std::uint64_t> ExplorationTrace::generation_sizes() const {
    std::vector<std::uint64_t> out;
    out.reserve(generations.size());
    for (const auto& g : generations) out.push_back(g.size());
    return out;
}

std::vector<Rank> ExplorationTrace::discovered() const {
    std::vector<Rank> out;
    for (const auto& g : generations) out.insert(out.end(), g.members.begin(), g.members.end());
    std::sort(out.begin(), out.end());
    return out;
}

ExplorationTrace explore(const VertexSet& start, EdgeOracle& oracle, int j, const StopParams& params,
                         const ExpansionObserver& observer) {
    const Vertex n = oracle.n();
    const int k = oracle.k();
    if (j < 1 || j > k - 1) throw std::invalid_argument("explore: need 1 <= j <= k-1");
    if (start.size() != j) throw std::invalid_argument("explore: start must be a j-set");
    VertexSet::checked(start.vertices(), n);
    if (!(params.component_cutoff >= 1.0)) throw std::invalid_argument("explore: StopParams not initialized");

    const BinomTable table(n, k);
    const bool indexing = params.degree_index;
    const bool query_ledger = indexing && params.query_ledger;

    ExplorationTrace trace;
    trace.n = n;
    trace.k = k;
    trace.j = j;
    trace.start = start;
    trace.params = params;
    trace.ledger.max_jump_event.assign(static_cast<std::size_t>(j), 0);
    trace.ledger.max_pivot_event.assign(static_cast<std::size_t>(j), 0);

    RankMap<std::uint8_t> discovered;
    std::vector<Member> current{{colex_rank(start, table), start}};
    discovered[current.front().first] = 1;
    std::uint64_t component = 1;
    std::vector<RankMap<LedgerEntry>> step_ledger;

    auto flush_ledger = [&]() {
        std::vector<std::vector<std::pair<Rank, LedgerEntry>>> levels(static_cast<std::size_t>(j));
        for (std::size_t l = 1; l < step_ledger.size(); ++l) levels[l] = step_ledger[l].sorted_items();
        trace.ledger.steps.push_back(std::move(levels));
    };
    if (indexing) flush_ledger();  // step 1: the seed

    for (std::uint64_t round = 1;; ++round) {
        std::sort(current.begin(), current.end(), [](const Member& a, const Member& b) { return a.first < b.first; });
        GenerationRecord record;
        record.index = round;
        record.component_size = component;
        record.members.reserve(current.size());
        for (const auto& m : current) record.members.push_back(m.first);
        index_degrees(record, current, j, table, indexing);

        const bool s1 = current.empty();
        const bool s2 = static_cast<double>(component) >= params.component_cutoff;
        const bool s3 = static_cast<double>(current.size()) >= params.generation_cutoff;
        trace.generations.push_back(std::move(record));
        if (trace.T == 0 && (s1 || s2 || s3)) {
            trace.T = round;
            trace.stop_reason = s1 ? StopReason::S1 : (s2 ? StopReason::S2 : StopReason::S3);
        }
        if (!trace.T_large && (s1 || s2)) trace.T_large = round;

        const bool stop = (params.mode == StopMode::run_to_T && trace.T != 0) ||
                          (params.mode == StopMode::run_to_T_large && trace.T_large) ||
                          (params.mode == StopMode::exhaust && s1);
        if (stop) break;

        auto& expanding = trace.generations.back();
        std::vector<Member> next;
        if (indexing) {
            step_ledger.assign(static_cast<std::size_t>(j), RankMap<LedgerEntry>{});
        }
        std::vector<VertexSet> fresh;
        std::vector<EventCount> event;
        for (const auto& [j_rank, j_set] : current) {
            Expansion expansion;
            expansion.generation = round;
            expansion.j_set = j_rank;
            visit_supersets(j_set, n, k, [&](const VertexSet& k_set) {
                const Rank k_rank = colex_rank(k_set, table);
                std::optional<bool> status = oracle.reveal_if_new(k_rank);
                if (!status) return;
                ++expansion.queries;
                if (query_ledger) {
                    for (int l = 1; l < j; ++l) {
                        auto& entries = step_ledger[static_cast<std::size_t>(l)];
                        visit_subsets(k_set, l, [&](const VertexSet& sub) {
                            LedgerEntry& e = entries[colex_rank(sub, table)];
                            if (j_set.contains_all(sub)) ++e.pivot_queries;
                            else ++e.jump_queries;
                        });
                    }
                }
                if (!*status) return;
                ++expansion.edges;
                fresh.clear();
                visit_subsets(k_set, j, [&](const VertexSet& sub) {
                    const Rank r = colex_rank(sub, table);
                    if (discovered.try_emplace(r).second) {
                        next.emplace_back(r, sub);
                        fresh.push_back(sub);
                    }
                });
                expansion.discovered += fresh.size();
                if (!indexing) return;
                bool any_jump = false;
                bool any_pivot = false;
                for (int l = 1; l < j; ++l) {
                    auto& entries = step_ledger[static_cast<std::size_t>(l)];
                    event.clear();
                    for (const auto& found : fresh) {
                        visit_subsets(found, l, [&](const VertexSet& sub) {
                            const Rank r = colex_rank(sub, table);
                            const bool pivot = j_set.contains_all(sub);
                            LedgerEntry& e = entries[r];
                            if (pivot) ++e.pivot;
                            else ++e.jump;
                            (pivot ? any_pivot : any_jump) = true;
                            auto it = std::find_if(event.begin(), event.end(),
                                                   [&](const EventCount& ec) { return ec.l_set == r; });
                            if (it == event.end()) event.push_back({r, 1, pivot});
                            else ++it->count;
                        });
                    }
                    for (const auto& ec : event) {
                        auto& cap = ec.pivot ? trace.ledger.max_pivot_event : trace.ledger.max_jump_event;
                        cap[static_cast<std::size_t>(l)] = std::max(cap[static_cast<std::size_t>(l)], ec.count);
                    }
                }
                if (any_jump) ++trace.ledger.jump_events;
                if (any_pivot) ++trace.ledger.pivot_events;
            });
            expanding.queries += expansion.queries;
            expanding.edges += expansion.edges;
            if (observer) observer(expansion);
        }
        trace.total_queries += expanding.queries;
        trace.total_edges += expanding.edges;
        if (indexing) flush_ledger();
        component += next.size();
        current = std::move(next);
    }
    return trace;
}

std::vector<DegreeViolation> check_theorem3(const ExplorationTrace& trace, const TheoryConstants& constants,
                                            double delta) {
    if (constants.j != trace.j || constants.k != trace.k) {
        throw std::invalid_argument("check_theorem3: constants built for a different (k, j)");
    }
    std::vector<DegreeViolation> out;
    const double nd = static_cast<double>(trace.n);
    const double slack = std::pow(nd, delta);
    for (const auto& g : trace.generations) {
        if (g.index > trace.T) break;
        const double size = static_cast<double>(g.size());
        for (int l = 0; l < trace.j; ++l) {
            const auto li = static_cast<std::size_t>(l);
            const double bound = constants.C[li] * (size / std::pow(nd, l) + slack);
            if (l == 0) {
                if (size > bound) out.push_back({g.index, 0, 0, size, bound});
                continue;
            }
            if (g.max_degree.size() <= li) throw std::logic_error("check_theorem3: trace recorded without degree index");
            if (static_cast<double>(g.max_degree[li]) <= bound) continue;
            for (const auto& [l_set, d] : g.degree[li]) {
                if (static_cast<double>(d) > bound) out.push_back({g.index, l, l_set, static_cast<double>(d), bound});
            }
        }
    }
    return out;
}

bool check_corollary4(const ExplorationTrace& trace, double xi, std::span<const double> kappa) {
    if (!trace.stopped_by_S()) throw std::logic_error("check_corollary4: only defined for traces stopped by S2 or S3");
    if (kappa.size() + 1 < static_cast<std::size_t>(trace.j)) throw std::invalid_argument("check_corollary4: need kappa_1..kappa_{j-1}");
    const auto& g = trace.generation(trace.T);
    const double nd = static_cast<double>(trace.n);
    for (int l = 1; l < trace.j; ++l) {
        const auto li = static_cast<std::size_t>(l);
        if (g.max_degree.size() <= li) throw std::logic_error("check_corollary4: trace recorded without degree index");
        const double bound = kappa[li - 1] * (static_cast<double>(g.size()) / std::pow(nd, l) + xi);
        if (static_cast<double>(g.max_degree[li]) > bound) return false;
    }
    return true;
}

namespace {

std::uint64_t staybig_horizon(const ExplorationTrace& trace) {
    // last round i whose successor G_{i+1} is recorded
    std::uint64_t last = trace.generations.size() > 0 ? trace.generations.size() - 1 : 0;
    std::uint64_t limit = trace.params.mode == StopMode::run_to_T_large && trace.T_large ? *trace.T_large - 1 : trace.T;
    return std::min(last, limit);
}

}  // namespace

std::vector<std::uint64_t> check_staybig(const ExplorationTrace& trace, Vertex n) {
    std::vector<std::uint64_t> out;
    const std::uint64_t horizon = staybig_horizon(trace);
    for (std::uint64_t i = 1; i <= horizon; ++i) {
        const auto now = trace.generation(i).size();
        if (now >= n && trace.generation(i + 1).size() < now) out.push_back(i);
    }
    return out;
}

std::uint64_t staybig_applicable_rounds(const ExplorationTrace& trace, Vertex n) {
    std::uint64_t count = 0;
    const std::uint64_t horizon = staybig_horizon(trace);
    for (std::uint64_t i = 1; i <= horizon; ++i) {
        if (trace.generation(i).size() >= n) ++count;
    }
    return count;
}

bool check_size_at_T_large(const ExplorationTrace& trace, double lambda, Vertex n, int j) {
    if (trace.params.mode != StopMode::run_to_T_large || !trace.T_large) {
        throw std::logic_error("check_size_at_T_large: trace was not run to T_large");
    }
    const double bound = 3.0 * lambda * std::pow(static_cast<double>(n), j);
    return static_cast<double>(trace.generation(*trace.T_large).component_size) <= bound;
}

std::vector<LedgerIssue> check_ledger(const ExplorationTrace& trace) {
    std::vector<LedgerIssue> out;
    if (!trace.params.degree_index) return out;
    const int k = trace.k;
    const int j = trace.j;
    for (int l = 1; l < j; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const auto jump_cap = static_cast<std::uint32_t>(binom(static_cast<std::uint64_t>(k - l), static_cast<std::uint64_t>(j - l)));
        if (trace.ledger.max_jump_event[li] > jump_cap) out.push_back({0, l, 0, "jump event above cap"});
        if (trace.ledger.max_pivot_event[li] + 1 > jump_cap) out.push_back({0, l, 0, "pivot event above cap"});
    }
    // generation 1 is the seed; the identity applies to every later recorded step
    for (std::size_t step = 2; step <= trace.ledger.steps.size() && step <= trace.generations.size(); ++step) {
        const auto& g = trace.generations[step - 1];
        const auto& levels = trace.ledger.steps[step - 1];
        for (int l = 1; l < j; ++l) {
            const auto& entries = levels[static_cast<std::size_t>(l)];
            const auto& degree = g.degree[static_cast<std::size_t>(l)];
            std::size_t d = 0;
            for (const auto& [l_set, entry] : entries) {
                while (d < degree.size() && degree[d].first < l_set) {
                    out.push_back({step, l, degree[d].first, "degree without attribution"});
                    ++d;
                }
                const std::uint32_t attributed = entry.jump + entry.pivot;
                std::uint32_t actual = 0;
                if (d < degree.size() && degree[d].first == l_set) actual = degree[d++].second;
                if (attributed != actual) out.push_back({step, l, l_set, "J_L + P_L != d_L"});
            }
            for (; d < degree.size(); ++d) out.push_back({step, l, degree[d].first, "degree without attribution"});
        }
    }
    return out;
}

StopFrequency multi_start_stop_frequency(const OracleFactory& factory, Vertex n, int j, const StopParams& params,
                                         std::uint64_t trials, SeededStream& stream) {
    if (trials < 1) throw std::invalid_argument("multi_start_stop_frequency: need at least one trial");
    StopParams run = params;
    run.mode = StopMode::run_to_T;
    const Rank jsets = binom(n, static_cast<std::uint64_t>(j));
    StopFrequency out;
    out.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        EdgeOracle oracle = factory(t);
        VertexSet start = colex_unrank(stream.below(jsets), j, n);
        ExplorationTrace trace = explore(start, oracle, j, run);
        switch (trace.stop_reason) {
            case StopReason::S1: ++out.s1; break;
            case StopReason::S2: ++out.s2; break;
            case StopReason::S3: ++out.s3; break;
            case StopReason::none: break;
        }
    }
    const double p = static_cast<double>(out.s2 + out.s3) / static_cast<double>(trials);
    out.estimate = p;
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return out;
}

void write_trace_csv(std::ostream& out, const ExplorationTrace& trace) {
    out << "#schema=hypergiant.trace/1\n";
    out << "#n=" << trace.n << " k=" << trace.k << " j=" << trace.j << " start=" << to_string(trace.start) << '\n';
    out << "#mode=" << to_string(trace.params.mode) << " stop_reason=" << to_string(trace.stop_reason)
        << " T=" << trace.T << " T_large=" << (trace.T_large ? std::to_string(*trace.T_large) : std::string("-"))
        << '\n';
    out << "#total_queries=" << trace.total_queries << " total_edges=" << trace.total_edges << '\n';
    out << "round,generation_size,component_size";
    for (int l = 1; l < trace.j; ++l) out << ",max_degree_l" << l;
    out << ",queries,edges\n";
    for (const auto& g : trace.generations) {
        out << g.index << ',' << g.size() << ',' << g.component_size;
        for (int l = 1; l < trace.j; ++l) {
            const auto li = static_cast<std::size_t>(l);
            out << ',';
            if (li < g.max_degree.size()) out << g.max_degree[li];
        }
        out << ',' << g.queries << ',' << g.edges << '\n';
    }
}

}  // namespace hypergiant
