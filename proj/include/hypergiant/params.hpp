#ifndef HYPERGIANT_PARAMS_HPP
#define HYPERGIANT_PARAMS_HPP

#include <string>

#include "hypergiant/combinat.hpp"

namespace hypergiant {

/// How far an exploration runs past its first stopping round.
enum class StopMode {
    run_to_T,        // stop at the first round where S1, S2 or S3 holds
    run_to_T_large,  // keep going through S3 until S1 or S2 holds
    exhaust,         // stop only when the component is exhausted (S1)
};

enum class StopReason { none, S1, S2, S3 };

std::string to_string(StopMode mode);
std::string to_string(StopReason reason);
StopMode parse_stop_mode(const std::string& text);

/**
 * Stopping thresholds for the breadth-first exploration.
 *
 * S2 fires once the partial component reaches lambda*n^j j-sets and S3 once
 * a single generation reaches lambda^2*n^j. Construct through make(), which
 * enforces 0 < delta < 1/6, lambda*n^j >= 1 and xi > 0.
 */
struct StopParams {
    double lambda = 0.0;
    double delta = 0.15;
    double xi = 1.0;
    StopMode mode = StopMode::run_to_T;
    double component_cutoff = 0.0;   // lambda * n^j
    double generation_cutoff = 0.0;  // lambda^2 * n^j
    /// Per-generation l-set degree maps and the jump/pivot ledger.
    bool degree_index = true;
    /// Per-(L, i) jump and pivot query counts; costs an extra update per query.
    bool query_ledger = false;

    static StopParams make(Vertex n, int j, double lambda, double delta, double xi,
                           StopMode mode = StopMode::run_to_T);
};

}  // namespace hypergiant

#endif  // HYPERGIANT_PARAMS_HPP
