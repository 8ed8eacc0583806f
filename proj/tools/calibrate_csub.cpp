// Brute-force calibration of the subcritical size constant: the largest
// j-component over many subcritical samples, divided by eps^-2 log C(n, j).
#include <cmath>
#include <cstdio>

#include "CLI11.hpp"
#include "hypergiant/census.hpp"
#include "hypergiant/randsrc.hpp"
#include "hypergiant/theory.hpp"

using namespace hypergiant;

int main(int argc, char** argv) {
    CLI::App app{"calibrate the subcritical component-size constant"};
    Vertex n = 200;
    int k = 3;
    int j = 2;
    double eps = 0.15;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 20240611;
    app.add_option("--n", n);
    app.add_option("--k", k);
    app.add_option("--j", j);
    app.add_option("--eps", eps);
    app.add_option("--samples", samples);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    const double p = (1.0 - eps) * critical_p(n, k, j);
    const double scale = std::log(binom_real(n, j)) / (eps * eps);
    std::uint64_t worst = 0;
    double sum = 0.0;
    for (std::uint64_t t = 0; t < samples; ++t) {
        SeededStream stream(seed, seed ^ t);
        const ComponentCensus census = build_census(sample_hypergraph(n, k, p, stream), j);
        worst = std::max(worst, census.largest);
        sum += static_cast<double>(census.largest);
    }
    std::printf("n=%u k=%d j=%d eps=%.17g p=%.17g samples=%llu\n", n, k, j, eps, p,
                static_cast<unsigned long long>(samples));
    std::printf("mean_largest=%.17g max_largest=%llu scale=%.17g\n", sum / static_cast<double>(samples),
                static_cast<unsigned long long>(worst), scale);
    std::printf("C_sub=%.17g\n", static_cast<double>(worst) / scale);
    return 0;
}
