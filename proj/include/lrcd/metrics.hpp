#pragma once

#include <cstdint>
#include <vector>

#include "lrcd/network.hpp"

namespace lrcd {

struct ContingencyTable {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> counts;  // row-major
    std::vector<std::int64_t> row_marginals;
    std::vector<std::int64_t> col_marginals;
    std::int64_t n = 0;

    std::int64_t at(int r, int c) const { return counts[static_cast<std::size_t>(r) * cols + c]; }

    static ContingencyTable from_labels(const LabelVector& a, const LabelVector& b);
};

// Adjusted Rand index of two partitions of the same node set. 1 for identical
// partitions (including the degenerate all-singletons / single-block cases,
// where the usual denominator vanishes), ~0 for independent ones.
double adjusted_rand_index(const LabelVector& a, const LabelVector& b);

// Fraction of nodes misclassified under the best relabeling: min over
// permutations phi of {1..k_total} of (1/n) sum 1{c_hat_i != phi(c_true_i)}.
// Exhaustive search; k_total > 8 is rejected.
double misclassification_rate(const LabelVector& c_hat, const LabelVector& c_true, int k_total);

}  // namespace lrcd
