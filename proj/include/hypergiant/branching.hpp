#ifndef HYPERGIANT_BRANCHING_HPP
#define HYPERGIANT_BRANCHING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypergiant/combinat.hpp"
#include "hypergiant/params.hpp"
#include "hypergiant/randsrc.hpp"

namespace hypergiant {

enum class LawKind { upper, lower, pivot, dual };

std::string to_string(LawKind kind);
LawKind parse_law_kind(const std::string& text);

/// Offspring m * Bin(N, p).
struct OffspringLaw {
    LawKind kind = LawKind::upper;
    std::uint64_t N = 0;
    double p = 0.0;
    std::uint64_t m = 1;

    double mean() const noexcept { return static_cast<double>(m) * static_cast<double>(N) * p; }
    std::uint64_t draw(SeededStream& stream) const;
};

/**
 * Offspring law of the given kind for j-sets of k-uniform hypergraphs on n vertices.
 *
 * upper: N = C(n,k-j), m = C(k,j)-1. lower: N = ceil((1-gamma) C(n,k-j)).
 * pivot: m = C(k-l,j-l)-1 for l in [1, j-1]. dual: the upper law with
 * p replaced by (1-eps)/(m N), where 1+eps is the upper mean at p.
 */
OffspringLaw make_law(LawKind kind, Vertex n, int k, int j, double p, std::optional<int> level = std::nullopt,
                      std::optional<double> gamma = std::nullopt);

struct GWOutcome {
    std::uint64_t total_progeny = 1;  // capped at the progeny cap
    std::uint64_t generations = 0;    // generations after the root that were born
    bool survived_to_cap = false;
};

/// Generation-by-generation realization; stops at extinction or when total progeny reaches the cap.
GWOutcome gw_run(const OffspringLaw& law, std::uint64_t progeny_cap, SeededStream& stream);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// max(10^4, ceil(10 / eps^2)).
std::uint64_t default_progeny_cap(double eps);

/// Fraction of runs alive at the progeny cap. Trial t uses stream.substream(t).
Estimate survival_mc(const OffspringLaw& law, std::uint64_t progeny_cap, std::uint64_t trials, SeededStream& stream);

struct CapSensitivity {
    Estimate at_cap;
    Estimate at_4cap;
    bool agree = false;  // |difference| <= 2 combined standard errors
};

CapSensitivity survival_cap_sensitivity(const OffspringLaw& law, std::uint64_t progeny_cap, std::uint64_t trials,
                                        SeededStream& stream);

inline constexpr std::uint64_t kProgenySafetyCap = 100000000;

/// Mean total progeny of a subcritical law. Throws if the mean is >= 1 or a run reaches the safety cap.
Estimate mean_progeny_mc(const OffspringLaw& law, std::uint64_t trials, SeededStream& stream,
                         std::uint64_t safety_cap = kProgenySafetyCap);

struct CoupledRun {
    std::vector<std::uint64_t> bfs_gen_sizes;
    std::vector<std::uint64_t> bp_gen_sizes;
    /// Branching generations are tracked for at most this many individuals.
    std::uint64_t saturation = 0;
    bool saturated = false;
    bool dominated = false;
    StopReason stop_reason = StopReason::none;
};

/**
 * Exploration from `start` paired with the upper branching process.
 *
 * Each BFS member's branching partner reuses the member's query outcomes and
 * pads with fresh draws up to C(n,k-j) trials; surplus branching individuals
 * draw from the padding stream alone. Each success yields C(k,j)-1 children.
 * Branching generations are truncated at C(n,j) individuals, which keeps the
 * comparison exact since no BFS generation can be larger.
 */
CoupledRun coupled_domination_run(const VertexSet& start, Vertex n, int k, int j, double p, const StopParams& params,
                                  SeededStream& stream);

}  // namespace hypergiant

#endif  // HYPERGIANT_BRANCHING_HPP
