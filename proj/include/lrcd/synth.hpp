#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrcd/network.hpp"

namespace lrcd {

enum class BackgroundMode { homogeneous, heterogeneous };

// Per-covariate sampling distribution; Uniform(-1,1) unless overridden.
struct CovariateSpec {
    double lo = -1.0;
    double hi = 1.0;
};

struct GenConfig {
    int n = 0;
    int k = 0;
    std::vector<double> beta;  // intercept first, length = covariates.size()+1
    std::vector<double> pi;    // length K
    // (K+1)x(K+1) symmetric link probabilities, row-major. In heterogeneous
    // mode only the community-community block is used; background pairs draw
    // their probabilities from u.
    std::vector<double> p_within;
    BackgroundMode background_mode = BackgroundMode::homogeneous;
    double u_max = 0.2;  // heterogeneous intensity bound, in (0,1]
    std::vector<CovariateSpec> covariates{CovariateSpec{}};
    std::uint64_t seed = 0;

    double p_at(int a, int b) const {
        return p_within[static_cast<std::size_t>(a) * (k + 1) + b];
    }
    void validate() const;  // throws ConfigError
};

struct SyntheticNetwork {
    Network net;
    CovariateMatrix x;
    LabelVector c_true;
    // Background intensities u_i (heterogeneous mode only, empty otherwise);
    // entries for non-background nodes are 0.
    std::vector<double> u;
};

// Draw order given the seed: covariates row by row, then y_i, then the
// community for each y_i = 1 node, then u_i for each background node
// (heterogeneous mode), then edges over pairs i<j in lexicographic order.
SyntheticNetwork generate(const GenConfig& config);

// Homogeneous-background simulation grid: n=500, K=2, beta=(beta0, 4),
// pi=(1/2,1/2), within-community p11 in [0.15,0.25], between-community 0.05,
// all background pairs 0.10; beta0 in {-1, 0, 1}.
GenConfig scenario_table1(double p11, double beta0, std::uint64_t seed);

// Same grid with the heterogeneous background, u_i ~ U(0, 0.2).
GenConfig scenario_table2(double p11, double beta0, std::uint64_t seed);

// Model-selection study: heterogeneous background with K_true communities.
// k_true = 2: n=500, beta0=0 (50% background). k_true = 5: n=1000, beta0=1.
GenConfig scenario_table3(double p11, int k_true, std::uint64_t seed);

}  // namespace lrcd
