#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lrcd/errors.hpp"

namespace lrcd {

// Undirected simple graph over n nodes indexed 0..n-1.
// Immutable after construction; adjacency kept as sorted neighbor lists.
// Self-loops and duplicate edges are rejected, not dropped.
class Network {
public:
    Network(int n, std::vector<std::pair<int, int>> edges);

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
    const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
    // Normalized edge list: first < second, lexicographically sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

// n x P matrix of user covariates; the intercept column is implicit and
// prepended on the fly wherever a design matrix is needed.
class CovariateMatrix {
public:
    CovariateMatrix(int n, int p, std::vector<double> values);

    static CovariateMatrix intercept_only(int n) { return CovariateMatrix(n, 0, {}); }

    int rows() const { return n_; }
    int cols() const { return p_; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * p_ + j]; }

    // x_i * beta with beta = (intercept, user coefficients), length P+1.
    double linear_predictor(int i, std::span<const double> beta) const;

private:
    int n_;
    int p_;
    std::vector<double> values_;  // row-major
};

// Length-n group labels in {1,..,K+1}; group K+1 is the background.
class LabelVector {
public:
    LabelVector(std::vector<int> labels, int k);

    int size() const { return static_cast<int>(labels_.size()); }
    int k() const { return k_; }
    int group_count() const { return k_ + 1; }
    int operator[](int i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }

    // Sizes of groups 1..K+1 (index 0 = group 1).
    std::vector<int> group_sizes() const;

    bool operator==(const LabelVector& other) const {
        return k_ == other.k_ && labels_ == other.labels_;
    }

private:
    std::vector<int> labels_;
    int k_;
};

// Per-node edge counts into the blocks of a blocking vector e:
// b[i][k] = #{neighbors j of i with e_j = k+1}, plus degrees d.
struct BlockCounts {
    int n = 0;
    int cols = 0;  // K+1
    std::vector<int> b;  // row-major n x cols
    std::vector<int> d;

    int at(int i, int k) const { return b[static_cast<std::size_t>(i) * cols + k]; }
};

BlockCounts block_counts(const Network& net, const LabelVector& e);

// O_kl = sum over ordered pairs (i,j) of A_ij 1(c_i=k, c_j=l); within-group
// edges are counted twice (O_kk is even). n_kl = n_k n_l off-diagonal,
// n_kk = n_k (n_k - 1).
struct EdgeBlockSums {
    int groups = 0;  // K+1
    std::vector<std::int64_t> o;     // row-major groups x groups
    std::vector<int> group_sizes;    // n_k
    std::vector<std::int64_t> pair_counts;  // n_kl, row-major

    std::int64_t o_at(int k, int l) const { return o[static_cast<std::size_t>(k) * groups + l]; }
    std::int64_t pairs_at(int k, int l) const {
        return pair_counts[static_cast<std::size_t>(k) * groups + l];
    }
};

EdgeBlockSums edge_block_sums(const Network& net, const LabelVector& c);

}  // namespace lrcd
