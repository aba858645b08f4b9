#pragma once

#include <span>
#include <string>
#include <vector>

#include "lrcd/errors.hpp"
#include "lrcd/network.hpp"

namespace lrcd {

struct LogisticFit {
    std::vector<double> beta;  // length P+1, intercept first
    bool converged = false;
    int iterations = 0;
    double final_gradient_norm = 0.0;  // inf-norm
    bool separation_capped = false;
};

struct LogisticOptions {
    double grad_tol = 1e-8;
    // An interior maximum also makes the Newton step collapse; a flat
    // separation direction keeps it O(1) while the gradient underflows,
    // so convergence requires both.
    double step_tol = 1e-7;
    int max_iter = 100;
    double beta_cap = 30.0;  // |beta_j| beyond this = (quasi-)separation
    std::vector<double> start;  // warm start; empty = zeros
};

// Thrown when the optimizer runs past the coefficient cap; carries the
// clamped estimate so EM callers can keep going.
struct SeparationError : Error {
    LogisticFit capped;
    SeparationError(LogisticFit fit, const std::string& msg)
        : Error(msg), capped(std::move(fit)) {}
};

// Maximize sum_i { w_i x_i beta - log(1 + e^{x_i beta}) } over beta, with the
// intercept column implicit. Fractional responses w_i in [0,1] are allowed.
// Newton iterations with step-halving; each accepted step increases the
// objective, so an EM caller warm-starting at the previous beta never loses
// likelihood.
LogisticFit fit_weighted(const CovariateMatrix& x, std::span<const double> w,
                         const LogisticOptions& options = {});

// p_i = sigmoid(x_i beta), all in (0,1).
std::vector<double> predict_prob(const CovariateMatrix& x, std::span<const double> beta);

// sum_i { w_i x_i beta - softplus(x_i beta) }.
double weighted_log_likelihood(const CovariateMatrix& x, std::span<const double> w,
                               std::span<const double> beta);

// Wald standard errors from the observed-information diagonal,
// sqrt(diag((X' W X)^{-1})) with W = diag(p(1-p)).
std::vector<double> wald_standard_errors(const CovariateMatrix& x, std::span<const double> beta);

}  // namespace lrcd
