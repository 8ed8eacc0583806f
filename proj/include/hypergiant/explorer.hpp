#ifndef HYPERGIANT_EXPLORER_HPP
#define HYPERGIANT_EXPLORER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/params.hpp"
#include "hypergiant/randsrc.hpp"
#include "hypergiant/theory.hpp"

namespace hypergiant {

/// l-set rank paired with a count, sorted by rank.
using DegreeMap = std::vector<std::pair<Rank, std::uint32_t>>;

struct GenerationRecord {
    std::uint64_t index = 0;  // 1-based round number
    std::vector<Rank> members;  // j-set ranks in colex order
    std::uint64_t component_size = 0;  // |G_1| + ... + |G_i|
    /// Delta_l(G_i) for l in [0, j-1]; only l = 0 without degree indexing.
    std::vector<std::uint64_t> max_degree;
    /// d_L(G_i) per level l (index l, level 0 left empty).
    std::vector<DegreeMap> degree;
    /// Queries made and edges found while expanding this generation.
    std::uint64_t queries = 0;
    std::uint64_t edges = 0;

    std::uint64_t size() const noexcept { return members.size(); }
};

struct LedgerEntry {
    std::uint32_t jump = 0;
    std::uint32_t pivot = 0;
    std::uint64_t jump_queries = 0;
    std::uint64_t pivot_queries = 0;
};

/**
 * Jump/pivot attribution of new j-sets, per step and l-set.
 *
 * steps[i-1][l] lists the l-sets L touched while generation i was produced.
 * An edge found from J contributes a pivot at L when L is inside J and a jump
 * to L otherwise. Step 1 is the seed and stays empty.
 */
struct DegreeLedger {
    std::vector<std::vector<std::vector<std::pair<Rank, LedgerEntry>>>> steps;
    /// Largest number of new j-sets containing L added by a single event, per level.
    std::vector<std::uint32_t> max_jump_event;
    std::vector<std::uint32_t> max_pivot_event;
    std::uint64_t jump_events = 0;
    std::uint64_t pivot_events = 0;
};

struct ExplorationTrace {
    Vertex n = 0;
    int k = 0;
    int j = 0;
    VertexSet start;
    StopParams params;
    std::vector<GenerationRecord> generations;  // G_1 .. G_last
    StopReason stop_reason = StopReason::none;  // reason at round T
    std::uint64_t T = 0;
    std::optional<std::uint64_t> T_large;
    DegreeLedger ledger;
    std::uint64_t total_queries = 0;
    std::uint64_t total_edges = 0;

    const GenerationRecord& generation(std::uint64_t i) const { return generations.at(i - 1); }
    std::vector<std::uint64_t> generation_sizes() const;
    /// j-sets discovered over the recorded generations.
    std::vector<Rank> discovered() const;
    bool stopped_by_S() const noexcept { return stop_reason == StopReason::S2 || stop_reason == StopReason::S3; }
};

/// Per j-set expansion report, for couplings that pair BFS members with branching vertices.
struct Expansion {
    std::uint64_t generation = 0;
    Rank j_set = 0;
    std::uint64_t queries = 0;
    std::uint64_t edges = 0;
    std::uint64_t discovered = 0;
};
using ExpansionObserver = std::function<void(const Expansion&)>;

/**
 * Breadth-first exploration of the j-component of `start`.
 *
 * Members of each generation are expanded in colex order; each queries its
 * unrevealed k-supersets in colex order, and every neutral j-subset of a
 * found edge joins the next generation. Stopping conditions are checked at
 * the start of each round. The oracle must be owned by this exploration.
 */
ExplorationTrace explore(const VertexSet& start, EdgeOracle& oracle, int j, const StopParams& params,
                         const ExpansionObserver& observer = {});

struct DegreeViolation {
    std::uint64_t round = 0;
    int level = 0;
    Rank l_set = 0;
    double degree = 0.0;
    double bound = 0.0;
};

/// Rounds i <= T and levels l where Delta_l(G_i) > C_l (|G_i| / n^l + n^delta).
std::vector<DegreeViolation> check_theorem3(const ExplorationTrace& trace, const TheoryConstants& constants,
                                            double delta);

/// d_L(G_T) <= kappa_l (|G_T| n^-l + xi) for every l in [1, j-1]; kappa[l-1] is kappa_l.
/// Throws std::logic_error when the trace stopped by S1.
bool check_corollary4(const ExplorationTrace& trace, double xi, std::span<const double> kappa);

/// Rounds i with |G_i| >= n and a recorded |G_{i+1}| < |G_i|, for i <= T (i < T_large in T_large mode).
std::vector<std::uint64_t> check_staybig(const ExplorationTrace& trace, Vertex n);
/// Number of rounds check_staybig examines.
std::uint64_t staybig_applicable_rounds(const ExplorationTrace& trace, Vertex n);

/// |C(T_large)| <= 3 lambda n^j. Throws std::logic_error unless run in T_large mode.
bool check_size_at_T_large(const ExplorationTrace& trace, double lambda, Vertex n, int j);

struct LedgerIssue {
    std::uint64_t step = 0;
    int level = 0;
    Rank l_set = 0;
    std::string what;
};

/// Attribution identity J_L(i) + P_L(i) = d_L(G_i) and the per-event caps.
std::vector<LedgerIssue> check_ledger(const ExplorationTrace& trace);

struct StopFrequency {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t s1 = 0;
    std::uint64_t s2 = 0;
    std::uint64_t s3 = 0;
};

using OracleFactory = std::function<EdgeOracle(std::uint64_t trial)>;

/// Fraction of explorations from uniform random start j-sets that end by S2 or S3.
StopFrequency multi_start_stop_frequency(const OracleFactory& factory, Vertex n, int j, const StopParams& params,
                                         std::uint64_t trials, SeededStream& stream);

/// Per-round CSV with '#'-prefixed metadata lines (schema hypergiant.trace/1).
void write_trace_csv(std::ostream& out, const ExplorationTrace& trace);

}  // namespace hypergiant

#endif  // HYPERGIANT_EXPLORER_HPP
