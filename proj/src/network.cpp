#include "lrcd/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lrcd {

Network::Network(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw ConfigError("node count must be nonnegative");
    for (auto& [a, b] : edges) {
        if (a == b) {
            throw ConfigError("self-loop on node " + std::to_string(a));
        }
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw ConfigError("edge endpoint out of range: (" + std::to_string(a) + "," +
                              std::to_string(b) + ") with n=" + std::to_string(n));
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw ConfigError("duplicate edge (" + std::to_string(dup->first) + "," +
                          std::to_string(dup->second) + ")");
    }
    edges_ = std::move(edges);
    adjacency_.assign(n_, {});
    for (const auto& [a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

CovariateMatrix::CovariateMatrix(int n, int p, std::vector<double> values)
    : n_(n), p_(p), values_(std::move(values)) {
    if (n < 0 || p < 0) throw ConfigError("covariate matrix dimensions must be nonnegative");
    if (values_.size() != static_cast<std::size_t>(n) * p) {
        throw DimensionError("covariate value count does not match n*P");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ConfigError("covariate values must be finite");
    }
}

double CovariateMatrix::linear_predictor(int i, std::span<const double> beta) const {
    if (beta.size() != static_cast<std::size_t>(p_) + 1) {
        throw DimensionError("coefficient length must be P+1 (intercept first)");
    }
    double t = beta[0];
    const double* row = values_.data() + static_cast<std::size_t>(i) * p_;
    for (int j = 0; j < p_; ++j) t += row[j] * beta[j + 1];
    return t;
}

LabelVector::LabelVector(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
    if (k < 1) throw ConfigError("community count K must be >= 1");
    for (int v : labels_) {
        if (v < 1 || v > k_ + 1) {
            throw ConfigError("label " + std::to_string(v) + " outside {1,..," +
                              std::to_string(k_ + 1) + "}");
        }
    }
}

std::vector<int> LabelVector::group_sizes() const {
    std::vector<int> sizes(k_ + 1, 0);
    for (int v : labels_) ++sizes[v - 1];
    return sizes;
}

BlockCounts block_counts(const Network& net, const LabelVector& e) {
    if (e.size() != net.node_count()) {
        throw DimensionError("blocking vector length " + std::to_string(e.size()) +
                             " != node count " + std::to_string(net.node_count()));
    }
    BlockCounts out;
    out.n = net.node_count();
    out.cols = e.group_count();
    out.b.assign(static_cast<std::size_t>(out.n) * out.cols, 0);
    out.d.assign(out.n, 0);
    for (const auto& [i, j] : net.edges()) {
        ++out.b[static_cast<std::size_t>(i) * out.cols + (e[j] - 1)];
        ++out.b[static_cast<std::size_t>(j) * out.cols + (e[i] - 1)];
        ++out.d[i];
        ++out.d[j];
    }
    return out;
}

EdgeBlockSums edge_block_sums(const Network& net, const LabelVector& c) {
    if (c.size() != net.node_count()) {
        throw DimensionError("label vector length " + std::to_string(c.size()) +
                             " != node count " + std::to_string(net.node_count()));
    }
    EdgeBlockSums out;
    out.groups = c.group_count();
    out.o.assign(static_cast<std::size_t>(out.groups) * out.groups, 0);
    out.group_sizes = c.group_sizes();
    for (const auto& [i, j] : net.edges()) {
        const int gi = c[i] - 1, gj = c[j] - 1;
        ++out.o[static_cast<std::size_t>(gi) * out.groups + gj];
        ++out.o[static_cast<std::size_t>(gj) * out.groups + gi];
    }
    out.pair_counts.assign(static_cast<std::size_t>(out.groups) * out.groups, 0);
    for (int k = 0; k < out.groups; ++k) {
        for (int l = 0; l < out.groups; ++l) {
            const std::int64_t nk = out.group_sizes[k], nl = out.group_sizes[l];
            out.pair_counts[static_cast<std::size_t>(k) * out.groups + l] =
                (k == l) ? nk * (nk - 1) : nk * nl;
        }
    }
    return out;
}

}  // namespace lrcd
