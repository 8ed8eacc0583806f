#include "hypergiant/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hypergiant {

std::string to_string(StopMode mode) {
    switch (mode) {
        case StopMode::run_to_T: return "T";
        case StopMode::run_to_T_large: return "T_large";
        case StopMode::exhaust: return "exhaust";
    }
    return "?";
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::none: return "none";
        case StopReason::S1: return "S1";
        case StopReason::S2: return "S2";
        case StopReason::S3: return "S3";
    }
    return "?";
}

StopMode parse_stop_mode(const std::string& text) {
    if (text == "T") return StopMode::run_to_T;
    if (text == "T_large") return StopMode::run_to_T_large;
    if (text == "exhaust") return StopMode::exhaust;
    throw std::invalid_argument("unknown stop mode '" + text + "' (expected T, T_large or exhaust)");
}

StopParams StopParams::make(Vertex n, int j, double lambda, double delta, double xi, StopMode mode) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0)) throw std::invalid_argument("StopParams: delta must lie in (0, 1/6)");
    if (!(xi > 0.0)) throw std::invalid_argument("StopParams: xi must be positive");
    const double nj = std::pow(static_cast<double>(n), j);
    if (!(lambda > 0.0) || lambda * nj < 1.0) {
        throw std::invalid_argument("StopParams: lambda * n^j must be at least 1");
    }
    StopParams params;
    params.lambda = lambda;
    params.delta = delta;
    params.xi = xi;
    params.mode = mode;
    params.component_cutoff = lambda * nj;
    params.generation_cutoff = lambda * lambda * nj;
    return params;
}

namespace {

void check_kj(Vertex n, int k, int j) {
    if (j < 1 || k < j + 1 || k > kMaxArity || static_cast<Vertex>(k) > n) {
        throw std::invalid_argument("need 1 <= j <= k-1 <= n-1 (got n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")");
    }
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

std::int64_t small_binom(int n, int r) {
    return static_cast<std::int64_t>(binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)));
}

}  // namespace

double binom_real(double n, double r) {
    if (r < 0.0 || r > n) return 0.0;
    if (n <= 4294967295.0) {
        try {
            return to_double(binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)));
        } catch (const std::overflow_error&) {
            // fall through to log-gamma
        }
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0));
}

double critical_p(Vertex n, int k, int j) {
    check_kj(n, k, j);
    const double c = static_cast<double>(small_binom(k, j) - 1);
    return 1.0 / (c * binom_real(n, k - j));
}

TheoryConstants build_constants(int k, int j, double eps, std::optional<double> alpha) {
    if (j < 1 || k < j + 1 || k > kMaxArity) throw std::invalid_argument("build_constants: need 1 <= j <= k-1");
    check_eps(eps);
    TheoryConstants t;
    t.k = k;
    t.j = j;
    t.eps = eps;
    t.c = small_binom(k, j) - 1;
    const auto levels = static_cast<std::size_t>(j);
    t.c_l.resize(levels);
    t.w0.resize(levels);
    t.r.resize(levels);
    for (int l = 0; l < j; ++l) {
        auto i = static_cast<std::size_t>(l);
        t.c_l[i] = small_binom(k - l, j - l) - 1;
        t.w0[i] = std::max(0, j + l - k);
        t.r[i] = static_cast<double>(t.c_l[i]) / static_cast<double>(t.c);
    }
    if (alpha) {
        t.alpha = *alpha;
    } else if (j == 1) {
        t.alpha = 1.0;
    } else {
        double max_r = *std::max_element(t.r.begin() + 1, t.r.end());
        t.alpha = 0.5 * (1.0 / ((1.0 + eps) * max_r) - 1.0);
    }
    if (!(t.alpha > 0.0)) throw std::invalid_argument("build_constants: alpha must be positive");

    t.r_prime.assign(levels, 0.0);
    t.C_prime.assign(levels, 0.0);
    t.C.assign(levels, 0.0);
    t.r_prime[0] = 1.0;
    t.C[0] = 1.0;
    const double growth = (1.0 + t.alpha) * (1.0 + eps);
    for (int l = 1; l < j; ++l) {
        auto i = static_cast<std::size_t>(l);
        t.r_prime[i] = growth * t.r[i];
        if (t.r_prime[i] >= 1.0) {
            std::ostringstream msg;
            msg << "build_constants: alpha=" << t.alpha << " gives r'_" << l << " = " << t.r_prime[i] << " >= 1";
            throw std::invalid_argument(msg.str());
        }
        double sum = 0.0;
        for (int w = t.w0[i]; w <= l - 1; ++w) {
            sum += static_cast<double>(small_binom(l, w)) * t.C[static_cast<std::size_t>(w)] /
                   std::tgamma(static_cast<double>(k - j - l + w) + 1.0);
        }
        double inner = growth * std::tgamma(static_cast<double>(k - j) + 1.0) / static_cast<double>(t.c) * sum;
        t.C_prime[i] = static_cast<double>(small_binom(k - l, j - l)) * std::max(inner, 3.0);
        t.C[i] = (t.C_prime[i] + 2.0 * static_cast<double>(t.c_l[i]) + 1.0) / (1.0 - t.r_prime[i]);
    }
    return t;
}

FixedPointResult extinction_fixed_point(double trials, double p, std::int64_t c, double zeta, double damping) {
    if (!(trials >= 0.0) || !(p >= 0.0 && p <= 1.0) || c < 1 || !(zeta >= 0.0 && zeta < 1.0)) {
        throw std::invalid_argument("extinction_fixed_point: invalid inputs");
    }
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("extinction_fixed_point: damping in (0, 1]");
    const double exponent = (1.0 - zeta) * trials;
    const double cd = static_cast<double>(c);
    FixedPointResult out;
    if (exponent * cd * p <= 1.0) return out;

    auto step = [&](double rho) {
        return std::exp(exponent * std::log1p(-p * (1.0 - std::pow(rho, cd))));
    };
    constexpr std::uint64_t kMaxIterations = 1000000;
    double rho = 0.0;
    double residual = std::fabs(step(rho) - rho);
    std::uint64_t it = 0;
    while (it < kMaxIterations && residual > 1e-15) {
        double next = (1.0 - damping) * rho + damping * step(rho);
        ++it;
        if (next == rho) break;
        rho = next;
        residual = std::fabs(step(rho) - rho);
    }
    residual = std::fabs(step(rho) - rho);
    if (residual >= 1e-12) {
        throw std::runtime_error("extinction_fixed_point: no convergence after " + std::to_string(it) +
                                 " iterations (residual " + std::to_string(residual) + ")");
    }
    out.extinction = rho;
    out.survival = 1.0 - rho;
    out.jset_survival = out.survival;
    out.residual = residual;
    out.iterations = it;
    return out;
}

GiantPrediction giant_prediction(Vertex n, int k, int j, double eps) {
    check_kj(n, k, j);
    check_eps(eps);
    GiantPrediction g;
    const std::int64_t c = small_binom(k, j) - 1;
    const double jsets = binom_real(n, j);
    g.critical_p = critical_p(n, k, j);
    g.p = (1.0 + eps) * g.critical_p;
    g.survival = extinction_fixed_point(binom_real(n, k - j), g.p, c, 0.0).survival;
    g.asymptotic_size = 2.0 * eps / static_cast<double>(c) * jsets;
    g.solver_size = g.survival * jsets;
    return g;
}

double subcritical_bound(Vertex n, int j, double eps, double c_sub) {
    check_eps(eps);
    if (!(c_sub > 0.0)) throw std::invalid_argument("subcritical_bound: C_sub must be positive");
    return c_sub / (eps * eps) * std::log(binom_real(n, j));
}

DefaultParams default_params(Vertex n, int k, int j, double eps, double delta) {
    check_kj(n, k, j);
    check_eps(eps);
    const double nd = static_cast<double>(n);
    const double window_low = std::max(std::pow(nd, -0.5 + delta / 2.0), std::pow(nd, -j / 3.0));
    const double third = 1.0 / std::sqrt(std::pow(nd, std::min<double>(j, 1.0 - delta)) / eps);
    double lambda = std::max(window_low, third) * std::sqrt(eps);
    lambda = std::clamp(lambda, std::pow(nd, -j), eps / 10.0);
    const double xi = std::pow(std::log(binom_real(nd, j)), 1.5);

    DefaultParams out;
    out.stop = StopParams::make(n, j, lambda, delta, xi);
    out.gamma = std::sqrt(lambda * eps);
    auto warn = [&](const std::string& text) { out.warnings.push_back(text); };
    std::ostringstream msg;
    if (!(lambda > window_low && lambda < eps)) {
        msg << "lambda=" << lambda << " is outside the asymptotic window (" << window_low << ", " << eps
            << ") at this n";
        warn(msg.str());
        msg.str("");
    }
    if (eps * eps * eps * std::pow(nd, j) < 10.0) warn("eps^3 n^j < 10: too close to the critical window");
    if (eps * eps * std::pow(nd, 1.0 - delta) < 10.0) warn("eps^2 n^(1-delta) < 10: degree bounds are not expected to hold");
    if (xi >= lambda * lambda * nd) warn("xi >= lambda^2 n: xi = o(lambda^2 n) fails at this n");
    return out;
}

}  // namespace hypergiant
