#pragma once

#include <span>
#include <string>
#include <vector>

#include "lrcd/em.hpp"
#include "lrcd/network.hpp"

namespace lrcd {

struct KRecord {
    int k = 0;
    double joint_loglik = 0.0;
    double bic = 0.0;
    double icl = 0.0;
    bool failed = false;
    std::string error;
};

struct SelectionReport {
    std::vector<KRecord> records;
    int chosen_k_bic = 0;
    int chosen_k_icl = 0;
    std::vector<std::string> warnings;
};

// Joint log-likelihood of (c, A) at the plug-in estimates: logistic term with
// y_i = 1{c_i <= K}, pi_k = n_k / sum of community sizes, P_kl = O_kl / n_kl
// (0 when n_kl = 0), and the half-weighted ordered-pair block sum. 0 log 0
// terms are dropped. The within-background block uses the same plug-in ratio
// regardless of which fitter produced c_hat.
double joint_log_likelihood(const Network& net, const CovariateMatrix& x,
                            const LabelVector& c_hat, std::span<const double> beta_hat,
                            std::vector<std::string>* warnings = nullptr);

// ((K+1)(K+2)/2) * log(n(n-1)/2): blockmodel parameters only, logistic
// coefficients are not counted.
double bic_penalty(int k, int n);

double bic(const Network& net, const CovariateMatrix& x, const FitResult& fit, int k);
// icl = bic + K log n; lower is better for both.
double icl(const Network& net, const CovariateMatrix& x, const FitResult& fit, int k);

// Fit every K in [kmin, kmax] with identical options (same restart budget and
// seeds per K) and pick the minimizer of each criterion; ties go to the
// smaller K. Per-K failures are recorded and skipped.
SelectionReport select_k(const Network& net, const CovariateMatrix& x, int kmin, int kmax,
                         Variant variant, const EmOptions& options = {});

}  // namespace lrcd
