#include "lrcd/synth.hpp"

#include <cmath>
#include <string>

#include "lrcd/mathutil.hpp"
#include "lrcd/rng.hpp"

namespace lrcd {

void GenConfig::validate() const {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (k < 1) throw ConfigError("K must be >= 1");
    if (beta.size() != covariates.size() + 1) {
        throw ConfigError("beta length must be #covariates + 1 (intercept first)");
    }
    if (pi.size() != static_cast<std::size_t>(k)) throw ConfigError("pi length must be K");
    double pi_sum = 0.0;
    for (double p : pi) {
        if (!(p >= 0.0)) throw ConfigError("pi entries must be nonnegative");
        pi_sum += p;
    }
    if (std::abs(pi_sum - 1.0) > 1e-12) throw ConfigError("pi must sum to 1");
    const int groups = k + 1;
    if (p_within.size() != static_cast<std::size_t>(groups) * groups) {
        throw ConfigError("P must be (K+1)x(K+1)");
    }
    for (int a = 0; a < groups; ++a) {
        for (int b = 0; b < groups; ++b) {
            const double p = p_at(a, b);
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("link probabilities must be in [0,1]");
            if (p != p_at(b, a)) throw ConfigError("P must be symmetric");
        }
    }
    if (background_mode == BackgroundMode::heterogeneous) {
        if (!(u_max > 0.0 && u_max <= 1.0)) throw ConfigError("u_max must be in (0,1]");
    }
    for (const auto& spec : covariates) {
        if (!(spec.lo < spec.hi)) throw ConfigError("covariate bounds must satisfy lo < hi");
    }
}

SyntheticNetwork generate(const GenConfig& config) {
    config.validate();
    const int n = config.n;
    const int k = config.k;
    const int p = static_cast<int>(config.covariates.size());
    SplitMix64 rng(config.seed);

    std::vector<double> values(static_cast<std::size_t>(n) * p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            const auto& spec = config.covariates[j];
            values[static_cast<std::size_t>(i) * p + j] = rng.uniform(spec.lo, spec.hi);
        }
    }
    CovariateMatrix x(n, p, std::move(values));

    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        const double prob_relevant = sigmoid(x.linear_predictor(i, config.beta));
        labels[i] = rng.bernoulli(prob_relevant) ? 0 : k + 1;  // 0 = community TBD
    }
    for (int i = 0; i < n; ++i) {
        if (labels[i] == 0) labels[i] = 1 + rng.categorical(config.pi);
    }
    LabelVector c_true(std::move(labels), k);

    std::vector<double> u;
    const bool heterogeneous = config.background_mode == BackgroundMode::heterogeneous;
    if (heterogeneous) {
        u.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            if (c_true[i] == k + 1) u[i] = rng.uniform(0.0, config.u_max);
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        const bool bg_i = c_true[i] == k + 1;
        for (int j = i + 1; j < n; ++j) {
            const bool bg_j = c_true[j] == k + 1;
            double prob;
            if (!heterogeneous || (!bg_i && !bg_j)) {
                prob = config.p_at(c_true[i] - 1, c_true[j] - 1);
            } else if (bg_i && bg_j) {
                prob = std::sqrt(u[i] * u[j]);
            } else {
                prob = bg_i ? u[i] : u[j];
            }
            if (rng.bernoulli(prob)) edges.emplace_back(i, j);
        }
    }

    return SyntheticNetwork{Network(n, std::move(edges)), std::move(x), std::move(c_true),
                            std::move(u)};
}

namespace {

GenConfig grid_scenario(double p11, double beta0, std::uint64_t seed, BackgroundMode mode) {
    if (!(p11 >= 0.15 - 1e-12 && p11 <= 0.25 + 1e-12)) {
        throw ConfigError("p11 must lie in [0.15, 0.25], got " + std::to_string(p11));
    }
    if (std::abs(beta0 + 1.0) > 1e-12 && std::abs(beta0) > 1e-12 &&
        std::abs(beta0 - 1.0) > 1e-12) {
        throw ConfigError("beta0 must be one of {-1, 0, 1}, got " + std::to_string(beta0));
    }
    GenConfig config;
    config.n = 500;
    config.k = 2;
    config.beta = {beta0, 4.0};
    config.pi = {0.5, 0.5};
    config.p_within = {
        p11,  0.05, 0.10,
        0.05, p11,  0.10,
        0.10, 0.10, 0.10,
    };
    config.background_mode = mode;
    config.u_max = 0.2;
    config.seed = seed;
    return config;
}

}  // namespace

GenConfig scenario_table1(double p11, double beta0, std::uint64_t seed) {
    return grid_scenario(p11, beta0, seed, BackgroundMode::homogeneous);
}

GenConfig scenario_table2(double p11, double beta0, std::uint64_t seed) {
    return grid_scenario(p11, beta0, seed, BackgroundMode::heterogeneous);
}

GenConfig scenario_table3(double p11, int k_true, std::uint64_t seed) {
    if (!(p11 >= 0.15 - 1e-12 && p11 <= 0.25 + 1e-12)) {
        throw ConfigError("p11 must lie in [0.15, 0.25], got " + std::to_string(p11));
    }
    if (k_true != 2 && k_true != 5) {
        throw ConfigError("k_true must be 2 or 5, got " + std::to_string(k_true));
    }
    GenConfig config;
    config.k = k_true;
    config.n = (k_true == 2) ? 500 : 1000;
    config.beta = {(k_true == 2) ? 0.0 : 1.0, 4.0};
    config.pi.assign(k_true, 1.0 / k_true);
    const int groups = k_true + 1;
    config.p_within.assign(static_cast<std::size_t>(groups) * groups, 0.05);
    for (int a = 0; a < k_true; ++a) {
        config.p_within[static_cast<std::size_t>(a) * groups + a] = p11;
    }
    for (int a = 0; a < groups; ++a) {
        config.p_within[static_cast<std::size_t>(a) * groups + k_true] = 0.10;
        config.p_within[static_cast<std::size_t>(k_true) * groups + a] = 0.10;
    }
    config.background_mode = BackgroundMode::heterogeneous;
    config.u_max = 0.2;
    config.seed = seed;
    return config;
}

}  // namespace lrcd
