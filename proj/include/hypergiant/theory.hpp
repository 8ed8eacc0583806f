#ifndef HYPERGIANT_THEORY_HPP
#define HYPERGIANT_THEORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypergiant/params.hpp"

namespace hypergiant {

/// Critical edge probability 1 / ((C(k,j) - 1) * C(n, k-j)).
double critical_p(Vertex n, int k, int j);

/// C(n, r) as a double; exact conversion when it fits in 128 bits, log-gamma otherwise.
double binom_real(double n, double r);

/**
 * Degree-bound constants for generation l-degrees, indexed by l in [0, j-1].
 *
 * l = 0 is the trivial level (C[0] = 1, r[0] = 1); the recursion fills
 * l >= 1 from the lower levels.
 */
struct TheoryConstants {
    int k = 0;
    int j = 0;
    double eps = 0.0;
    double alpha = 0.0;
    /// C(k,j) - 1
    std::int64_t c = 0;
    std::vector<std::int64_t> c_l;  // C(k-l, j-l) - 1
    std::vector<int> w0;            // max(0, j + l - k)
    std::vector<double> r;          // c_l / c
    std::vector<double> r_prime;    // (1 + alpha)(1 + eps) r_l
    std::vector<double> C_prime;
    std::vector<double> C;
};

/// alpha defaults to half the headroom below r'_l = 1 (1.0 when j = 1, where it is unused).
TheoryConstants build_constants(int k, int j, double eps, std::optional<double> alpha = std::nullopt);

struct FixedPointResult {
    double extinction = 1.0;
    double survival = 0.0;
    /// Survival of the j-set at the root; identical to `survival` since vertices are j-sets.
    double jset_survival = 0.0;
    double residual = 0.0;
    std::uint64_t iterations = 0;
};

/// Minimal solution of rho = (1 - p(1 - rho^c))^((1-zeta) N) by damped iteration from 0.
FixedPointResult extinction_fixed_point(double trials, double p, std::int64_t c, double zeta,
                                        double damping = 1.0);

struct GiantPrediction {
    double critical_p = 0.0;
    double p = 0.0;
    double survival = 0.0;
    /// (2 eps / c) C(n, j)
    double asymptotic_size = 0.0;
    /// survival * C(n, j)
    double solver_size = 0.0;
};

GiantPrediction giant_prediction(Vertex n, int k, int j, double eps);

/// Frozen output of tools/calibrate_csub with its defaults (n=200, k=3, j=2, eps=0.15, 1000 samples).
inline constexpr double kDefaultSubcriticalConstant = 1.5070503268286877;

/// C_sub * eps^-2 * log C(n, j).
double subcritical_bound(Vertex n, int j, double eps, double c_sub = kDefaultSubcriticalConstant);

struct DefaultParams {
    StopParams stop;
    double gamma = 0.0;
    std::vector<std::string> warnings;
};

inline constexpr double kDefaultDelta = 0.15;

/// Desk-scale instantiation of lambda, xi and gamma; see README for the formulas.
DefaultParams default_params(Vertex n, int k, int j, double eps, double delta = kDefaultDelta);

}  // namespace hypergiant

#endif  // HYPERGIANT_THEORY_HPP
