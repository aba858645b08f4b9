#include "lrcd/select.hpp"

#include <cmath>
#include <limits>

#include "lrcd/mathutil.hpp"

namespace lrcd {

double joint_log_likelihood(const Network& net, const CovariateMatrix& x,
                            const LabelVector& c_hat, std::span<const double> beta_hat,
                            std::vector<std::string>* warnings) {
    if (c_hat.size() != net.node_count()) {
        throw DimensionError("label vector length != node count");
    }
    for (double b : beta_hat) {
        if (!std::isfinite(b)) throw NumericalError("non-finite beta in joint likelihood");
    }
    const int k = c_hat.k();

    double logistic_term = 0.0;
    for (int i = 0; i < net.node_count(); ++i) {
        const double t = x.linear_predictor(i, beta_hat);
        const double y = (c_hat[i] <= k) ? 1.0 : 0.0;
        logistic_term += y * t - softplus(t);
    }

    const EdgeBlockSums sums = edge_block_sums(net, c_hat);
    double community_total = 0.0;
    for (int l = 0; l < k; ++l) community_total += sums.group_sizes[l];
    double pi_term = 0.0;
    if (community_total > 0.0) {
        for (int l = 0; l < k; ++l) {
            const double nk = sums.group_sizes[l];
            if (nk > 0.0) pi_term += nk * std::log(nk / community_total);
        }
    } else if (warnings) {
        warnings->push_back("all nodes assigned to the background; pi term is empty");
    }

    double block_term = 0.0;
    for (int a = 0; a <= k; ++a) {
        for (int b = 0; b <= k; ++b) {
            const double pairs = static_cast<double>(sums.pairs_at(a, b));
            if (pairs == 0.0) continue;
            const double o = static_cast<double>(sums.o_at(a, b));
            const double p = o / pairs;
            double v = 0.0;
            if (o > 0.0) v += o * std::log(p);
            if (pairs - o > 0.0) v += (pairs - o) * std::log(1.0 - p);
            block_term += v;
        }
    }
    return logistic_term + pi_term + 0.5 * block_term;
}

double bic_penalty(int k, int n) {
    const double pair_total = static_cast<double>(n) * (n - 1) / 2.0;
    return (static_cast<double>(k + 1) * (k + 2) / 2.0) * std::log(pair_total);
}

double bic(const Network& net, const CovariateMatrix& x, const FitResult& fit, int k) {
    const double jll = joint_log_likelihood(net, x, fit.c_hat, fit.params.beta);
    return -2.0 * jll + bic_penalty(k, net.node_count());
}

double icl(const Network& net, const CovariateMatrix& x, const FitResult& fit, int k) {
    return bic(net, x, fit, k) + k * std::log(static_cast<double>(net.node_count()));
}

SelectionReport select_k(const Network& net, const CovariateMatrix& x, int kmin, int kmax,
                         Variant variant, const EmOptions& options) {
    if (kmin < 1 || kmax < kmin) throw ConfigError("need 1 <= kmin <= kmax");
    if (kmax >= net.node_count() - 1) throw ConfigError("kmax must be < n-1");

    SelectionReport report;
    double best_bic = std::numeric_limits<double>::infinity();
    double best_icl = std::numeric_limits<double>::infinity();
    for (int k = kmin; k <= kmax; ++k) {
        KRecord rec;
        rec.k = k;
        try {
            const FitResult fit_k = fit(net, x, k, variant, options);
            rec.joint_loglik = joint_log_likelihood(net, x, fit_k.c_hat, fit_k.params.beta,
                                                    &report.warnings);
            rec.bic = -2.0 * rec.joint_loglik + bic_penalty(k, net.node_count());
            rec.icl = rec.bic + k * std::log(static_cast<double>(net.node_count()));
            if (rec.bic < best_bic) {
                best_bic = rec.bic;
                report.chosen_k_bic = k;
            }
            if (rec.icl < best_icl) {
                best_icl = rec.icl;
                report.chosen_k_icl = k;
            }
        } catch (const Error& err) {
            rec.failed = true;
            rec.error = err.what();
            report.warnings.push_back("K=" + std::to_string(k) + " failed: " + err.what());
        }
        report.records.push_back(std::move(rec));
    }
    if (report.chosen_k_bic == 0) throw SelectError("every K in the scan failed");
    return report;
}

}  // namespace lrcd
