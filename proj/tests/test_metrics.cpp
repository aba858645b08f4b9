#include <doctest.h>

#include "lrcd/metrics.hpp"
#include "lrcd/rng.hpp"
#include "oracles.hpp"

using namespace lrcd;

namespace {

LabelVector random_partition(SplitMix64& rng, int n, int groups) {
    std::vector<int> labels(n);
    for (auto& l : labels) l = 1 + static_cast<int>(rng.next_double() * groups);
    return LabelVector(std::move(labels), groups - 1 > 0 ? groups - 1 : 1);
}

}  // namespace

TEST_CASE("adjusted Rand index examples") {
    CHECK(adjusted_rand_index(LabelVector({1, 1, 2, 2}, 1), LabelVector({1, 1, 2, 2}, 1)) ==
          doctest::Approx(1.0));
    CHECK(adjusted_rand_index(LabelVector({1, 1, 2, 2}, 1), LabelVector({1, 2, 1, 2}, 1)) ==
          doctest::Approx(-0.5));
    CHECK(adjusted_rand_index(LabelVector({1, 1, 2, 2}, 1), LabelVector({2, 2, 1, 1}, 1)) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(adjusted_rand_index(LabelVector({1, 1}, 1), LabelVector({1}, 1)),
                    DimensionError);
    // Degenerate denominators resolve to 1 by convention.
    CHECK(adjusted_rand_index(LabelVector({1, 1, 1}, 1), LabelVector({1, 1, 1}, 1)) == 1.0);
    CHECK(adjusted_rand_index(LabelVector({1, 2, 3}, 2), LabelVector({3, 1, 2}, 2)) == 1.0);
}

TEST_CASE("misclassification rate examples") {
    const LabelVector truth({1, 1, 2}, 1);
    CHECK(misclassification_rate(truth, truth, 2) == doctest::Approx(0.0));
    CHECK(misclassification_rate(LabelVector({2, 2, 1}, 1), truth, 2) == doctest::Approx(0.0));
    CHECK(misclassification_rate(LabelVector({1, 1, 2}, 1), LabelVector({1, 2, 2}, 1), 2) ==
          doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(misclassification_rate(truth, truth, 9), UnsupportedError);
}

TEST_CASE("metrics agree with brute-force oracles on random partitions") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_double() * 9);  // n <= 10, n >= 2
        const int groups = 2 + static_cast<int>(rng.next_double() * 3);
        auto a = random_partition(rng, n, groups);
        auto b = random_partition(rng, n, groups);

        CHECK(adjusted_rand_index(a, b) == doctest::Approx(oracle::ari_pair_count(a, b)));
        CHECK(adjusted_rand_index(a, b) == doctest::Approx(adjusted_rand_index(b, a)));

        const double rate = misclassification_rate(a, b, groups);
        CHECK(rate == doctest::Approx(oracle::misclass_bruteforce(a, b, groups)));
        CHECK(rate >= 0.0);
        CHECK(rate <= 1.0 - 1.0 / groups + 1e-12);
    }
}

TEST_CASE("misclassification is zero iff identical up to permutation") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_double() * 6);
        const int groups = 2 + static_cast<int>(rng.next_double() * 2);
        auto a = random_partition(rng, n, groups);
        // Relabel through a random fixed permutation.
        std::vector<int> perm(groups);
        for (int i = 0; i < groups; ++i) perm[i] = i + 1;
        for (int i = groups - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next_double() * (i + 1));
            std::swap(perm[i], perm[j]);
        }
        std::vector<int> relabeled(n);
        for (int i = 0; i < n; ++i) relabeled[i] = perm[a[i] - 1];
        CHECK(misclassification_rate(LabelVector(relabeled, a.k()), a, groups) == 0.0);
        CHECK(adjusted_rand_index(LabelVector(relabeled, a.k()), a) == doctest::Approx(1.0));
    }
}

TEST_CASE("ARI against an independent random partition is centered near zero") {
    SplitMix64 rng(123);
    const int n = 200;
    const auto reference = random_partition(rng, n, 3);
    double mean = 0.0;
    const int draws = 1000;
    for (int d = 0; d < draws; ++d) {
        mean += adjusted_rand_index(reference, random_partition(rng, n, 3));
    }
    mean /= draws;
    CHECK(std::abs(mean) < 0.02);
}
