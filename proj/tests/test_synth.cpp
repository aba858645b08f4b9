#include <doctest.h>

#include <cmath>

#include "lrcd/mathutil.hpp"
#include "lrcd/synth.hpp"
#include "oracles.hpp"

using namespace lrcd;

TEST_CASE("scenario builders pin the grid") {
    const auto c1 = scenario_table1(0.15, -1.0, 9);
    CHECK(c1.n == 500);
    CHECK(c1.k == 2);
    CHECK(c1.beta == std::vector<double>{-1.0, 4.0});
    CHECK(c1.pi == std::vector<double>{0.5, 0.5});
    CHECK(c1.p_at(0, 0) == 0.15);
    CHECK(c1.p_at(1, 1) == 0.15);
    CHECK(c1.p_at(0, 1) == 0.05);
    CHECK(c1.p_at(0, 2) == 0.10);
    CHECK(c1.p_at(1, 2) == 0.10);
    CHECK(c1.p_at(2, 2) == 0.10);
    CHECK(c1.background_mode == BackgroundMode::homogeneous);

    const auto c2 = scenario_table1(0.25, 0.0, 9);
    CHECK(c2.p_at(0, 0) == 0.25);
    CHECK(c2.beta[0] == 0.0);

    CHECK_THROWS_AS(scenario_table1(0.50, 0.0, 9), ConfigError);
    CHECK_THROWS_AS(scenario_table1(0.25, 5.0, 9), ConfigError);

    const auto h = scenario_table2(0.25, -1.0, 9);
    CHECK(h.background_mode == BackgroundMode::heterogeneous);
    CHECK(h.u_max == 0.2);
    const auto h2 = scenario_table2(0.15, 1.0, 9);
    CHECK(h2.p_at(0, 0) == 0.15);
    CHECK_THROWS_AS(scenario_table2(0.25, 5.0, 9), ConfigError);

    const auto t3 = scenario_table3(0.2, 5, 9);
    CHECK(t3.n == 1000);
    CHECK(t3.k == 5);
    CHECK(t3.beta[0] == 1.0);
    CHECK(t3.p_at(0, 0) == 0.2);
    CHECK(t3.p_at(0, 1) == 0.05);
    CHECK_THROWS_AS(scenario_table3(0.2, 3, 9), ConfigError);
}

TEST_CASE("config validation") {
    GenConfig config = scenario_table1(0.2, 0.0, 1);
    config.pi = {0.7, 0.7};
    CHECK_THROWS_AS(generate(config), ConfigError);
    config = scenario_table1(0.2, 0.0, 1);
    config.p_within[1] = 0.06;  // asymmetric
    CHECK_THROWS_AS(generate(config), ConfigError);
    config = scenario_table2(0.2, 0.0, 1);
    config.u_max = 0.0;
    CHECK_THROWS_AS(generate(config), ConfigError);
}

TEST_CASE("same seed reproduces the draw bitwise") {
    const auto a = generate(scenario_table2(0.22, -1.0, 424242));
    const auto b = generate(scenario_table2(0.22, -1.0, 424242));
    CHECK(a.net.edges() == b.net.edges());
    CHECK(a.c_true == b.c_true);
    CHECK(a.u == b.u);
    for (int i = 0; i < a.x.rows(); ++i) CHECK(a.x(i, 0) == b.x(i, 0));

    const auto c = generate(scenario_table2(0.22, -1.0, 424243));
    CHECK(a.net.edges() != c.net.edges());
}

TEST_CASE("background fraction matches the quadrature oracle") {
    // E[1 - sigmoid(beta0 + 4x)] over x ~ U(-1,1), by Simpson quadrature.
    auto expected_fraction = [](double beta0) {
        return oracle::simpson(
                   [&](double x) { return 1.0 - 1.0 / (1.0 + std::exp(-(beta0 + 4.0 * x))); },
                   -1.0, 1.0) /
               2.0;
    };
    // The quadrature itself reproduces the stated 62/50/38 percentages.
    CHECK(expected_fraction(-1.0) == doctest::Approx(0.62).epsilon(0.01));
    CHECK(expected_fraction(0.0) == doctest::Approx(0.50).epsilon(1e-6));
    CHECK(expected_fraction(1.0) == doctest::Approx(0.38).epsilon(0.01));

    for (double beta0 : {-1.0, 0.0, 1.0}) {
        const double expected = expected_fraction(beta0);
        const int draws = 200;
        long long background = 0;
        long long total = 0;
        for (int d = 0; d < draws; ++d) {
            const auto sample =
                generate(scenario_table1(0.2, beta0, 1000 + 7919u * d + (beta0 > 0) * 3));
            for (int i = 0; i < sample.c_true.size(); ++i) {
                background += sample.c_true[i] == 3;
            }
            total += sample.c_true.size();
        }
        const double empirical = static_cast<double>(background) / total;
        const double sigma = std::sqrt(expected * (1.0 - expected) / total);
        CHECK(std::abs(empirical - expected) <= 3.0 * sigma);
    }
}

TEST_CASE("constant P degenerates to an Erdos-Renyi draw") {
    GenConfig config;
    config.n = 800;
    config.k = 1;
    config.beta = {0.0, 4.0};
    config.pi = {1.0};
    config.p_within = {0.07, 0.07, 0.07, 0.07};
    config.seed = 31337;
    const auto sample = generate(config);
    const double pairs = 800.0 * 799.0 / 2.0;
    const double density = static_cast<double>(sample.net.edge_count()) / pairs;
    const double sigma = std::sqrt(0.07 * 0.93 / pairs);
    CHECK(std::abs(density - 0.07) <= 3.0 * sigma);
}

TEST_CASE("within-group frequencies on one large draw match P") {
    GenConfig config = scenario_table1(0.2, 0.0, 5150);
    config.n = 2000;
    const auto sample = generate(config);
    const auto sums = edge_block_sums(sample.net, sample.c_true);
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            const double expected = config.p_at(a, b);
            // O and n_kl follow the ordered-pair convention; halve the diagonal.
            const double observed =
                (a == b) ? sums.o_at(a, b) / 2.0 : static_cast<double>(sums.o_at(a, b));
            const double n_pairs = (a == b) ? sums.pairs_at(a, a) / 2.0
                                            : static_cast<double>(sums.pairs_at(a, b));
            const double freq = observed / n_pairs;
            const double se = std::sqrt(expected * (1.0 - expected) / n_pairs);
            CHECK(std::abs(freq - expected) <= 4.0 * se);
        }
    }
}

TEST_CASE("heterogeneous background rates match the Monte-Carlo oracle") {
    const auto sample = generate(scenario_table2(0.2, 0.0, 98765));
    const int n = sample.net.node_count();
    REQUIRE(!sample.u.empty());

    // Background-background: expected rate is the mean of sqrt(u_i u_j) over
    // the sampled intensities; the draw is a Poisson-binomial over pairs.
    double mean_p = 0.0, var_sum = 0.0;
    long long pairs = 0, edges_bb = 0;
    std::vector<int> bg;
    for (int i = 0; i < n; ++i) {
        if (sample.c_true[i] == 3) bg.push_back(i);
    }
    for (std::size_t a = 0; a < bg.size(); ++a) {
        for (std::size_t b = a + 1; b < bg.size(); ++b) {
            const double p = std::sqrt(sample.u[bg[a]] * sample.u[bg[b]]);
            mean_p += p;
            var_sum += p * (1.0 - p);
            ++pairs;
        }
    }
    for (const auto& [i, j] : sample.net.edges()) {
        if (sample.c_true[i] == 3 && sample.c_true[j] == 3) ++edges_bb;
    }
    mean_p /= pairs;
    const double empirical = static_cast<double>(edges_bb) / pairs;
    const double sigma = std::sqrt(var_sum) / pairs;
    CHECK(std::abs(empirical - mean_p) <= 3.0 * sigma);

    // Background-community pairs use u_i of the background endpoint.
    double mean_bc = 0.0, var_bc = 0.0;
    long long pairs_bc = 0, edges_bc = 0;
    for (int i = 0; i < n; ++i) {
        if (sample.c_true[i] != 3) continue;
        for (int j = 0; j < n; ++j) {
            if (sample.c_true[j] == 3 || j == i) continue;
            mean_bc += sample.u[i];
            var_bc += sample.u[i] * (1.0 - sample.u[i]);
            ++pairs_bc;
        }
    }
    for (const auto& [i, j] : sample.net.edges()) {
        if ((sample.c_true[i] == 3) != (sample.c_true[j] == 3)) ++edges_bc;
    }
    mean_bc /= pairs_bc;
    const double emp_bc = static_cast<double>(edges_bc) / pairs_bc;
    const double sigma_bc = std::sqrt(var_bc) / pairs_bc;
    CHECK(std::abs(emp_bc - mean_bc) <= 3.0 * sigma_bc);
}
