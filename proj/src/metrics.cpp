#include "lrcd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lrcd {

namespace {

double choose2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

ContingencyTable ContingencyTable::from_labels(const LabelVector& a, const LabelVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("label vectors differ in length: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    ContingencyTable t;
    t.rows = a.group_count();
    t.cols = b.group_count();
    t.n = a.size();
    t.counts.assign(static_cast<std::size_t>(t.rows) * t.cols, 0);
    for (int i = 0; i < a.size(); ++i) {
        ++t.counts[static_cast<std::size_t>(a[i] - 1) * t.cols + (b[i] - 1)];
    }
    t.row_marginals.assign(t.rows, 0);
    t.col_marginals.assign(t.cols, 0);
    for (int r = 0; r < t.rows; ++r) {
        for (int c = 0; c < t.cols; ++c) {
            t.row_marginals[r] += t.at(r, c);
            t.col_marginals[c] += t.at(r, c);
        }
    }
    return t;
}

double adjusted_rand_index(const LabelVector& a, const LabelVector& b) {
    const auto t = ContingencyTable::from_labels(a, b);
    if (t.n < 2) throw DimensionError("adjusted Rand index needs n >= 2");

    double sum_cells = 0.0;
    for (std::int64_t c : t.counts) sum_cells += choose2(static_cast<double>(c));
    double sum_rows = 0.0;
    for (std::int64_t m : t.row_marginals) sum_rows += choose2(static_cast<double>(m));
    double sum_cols = 0.0;
    for (std::int64_t m : t.col_marginals) sum_cols += choose2(static_cast<double>(m));

    const double expected = sum_rows * sum_cols / choose2(static_cast<double>(t.n));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    const double denom = max_index - expected;
    if (denom == 0.0) return 1.0;  // both trivial partitions: perfect agreement by convention
    return (sum_cells - expected) / denom;
}

double misclassification_rate(const LabelVector& c_hat, const LabelVector& c_true, int k_total) {
    if (k_total > 8) {
        throw UnsupportedError("misclassification_rate supports at most 8 groups (got " +
                               std::to_string(k_total) + ")");
    }
    if (k_total < 1) throw ConfigError("k_total must be >= 1");
    if (c_hat.size() != c_true.size()) {
        throw DimensionError("label vectors differ in length");
    }
    const int n = c_hat.size();
    for (int i = 0; i < n; ++i) {
        if (c_hat[i] > k_total || c_true[i] > k_total) {
            throw ConfigError("label exceeds k_total");
        }
    }

    // counts[r][s] = #{i : c_hat_i = r+1, c_true_i = s+1}
    std::vector<std::vector<int>> counts(k_total, std::vector<int>(k_total, 0));
    for (int i = 0; i < n; ++i) ++counts[c_hat[i] - 1][c_true[i] - 1];

    std::vector<int> perm(k_total);
    std::iota(perm.begin(), perm.end(), 0);
    int best_matches = -1;
    do {
        int matches = 0;
        for (int s = 0; s < k_total; ++s) matches += counts[perm[s]][s];
        best_matches = std::max(best_matches, matches);
    } while (std::next_permutation(perm.begin(), perm.end()));

    return static_cast<double>(n - best_matches) / static_cast<double>(n);
}

}  // namespace lrcd
