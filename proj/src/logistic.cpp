#include "lrcd/logistic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrcd/mathutil.hpp"

namespace lrcd {

namespace {

// Dense design matrix (1 | X).
Eigen::MatrixXd design_matrix(const CovariateMatrix& x) {
    Eigen::MatrixXd d(x.rows(), x.cols() + 1);
    for (int i = 0; i < x.rows(); ++i) {
        d(i, 0) = 1.0;
        for (int j = 0; j < x.cols(); ++j) d(i, j + 1) = x(i, j);
    }
    return d;
}

double objective(const Eigen::MatrixXd& xd, std::span<const double> w,
                 const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = xd * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += w[i] * eta[i] - softplus(eta[i]);
    return ll;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& h, const Eigen::VectorXd& g) {
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() == Eigen::Success) {
        Eigen::VectorXd step = llt.solve(g);
        if (step.allFinite()) return step;
    }
    // Near-singular Hessian (near-constant covariates): ridge retry.
    Eigen::MatrixXd hr = h;
    hr.diagonal().array() += 1e-10 * h.trace() + 1e-30;
    Eigen::LLT<Eigen::MatrixXd> llt2(hr);
    if (llt2.info() == Eigen::Success) {
        Eigen::VectorXd step = llt2.solve(g);
        if (step.allFinite()) return step;
    }
    throw NumericalError("logistic Newton system is singular even with ridge");
}

}  // namespace

LogisticFit fit_weighted(const CovariateMatrix& x, std::span<const double> w,
                         const LogisticOptions& options) {
    const int n = x.rows();
    const int dim = x.cols() + 1;
    if (w.size() != static_cast<std::size_t>(n)) {
        throw DimensionError("weight vector length != covariate rows");
    }
    if (n < dim) throw DimensionError("need at least P+1 observations");
    for (double wi : w) {
        if (!(wi >= 0.0 && wi <= 1.0)) throw ConfigError("weights must lie in [0,1]");
    }

    const Eigen::MatrixXd xd = design_matrix(x);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(dim);
    if (!options.start.empty()) {
        if (options.start.size() != static_cast<std::size_t>(dim)) {
            throw DimensionError("warm start length != P+1");
        }
        for (int j = 0; j < dim; ++j) beta[j] = options.start[j];
    }

    LogisticFit fit;
    fit.beta.assign(dim, 0.0);

    double ll = objective(xd, w, beta);
    double last_step_norm = std::numeric_limits<double>::infinity();

    Eigen::VectorXd p(n), pq(n), resid(n);
    int iter = 0;
    bool separated = false;
    for (; iter < options.max_iter; ++iter) {
        const Eigen::VectorXd eta = xd * beta;
        for (int i = 0; i < n; ++i) {
            p[i] = sigmoid(eta[i]);
            pq[i] = p[i] * (1.0 - p[i]);
            resid[i] = w[i] - p[i];
        }
        const Eigen::VectorXd grad = xd.transpose() * resid;
        const Eigen::MatrixXd hess = xd.transpose() * pq.asDiagonal() * xd;

        const double grad_norm = grad.lpNorm<Eigen::Infinity>();
        fit.final_gradient_norm = grad_norm;
        if (grad_norm < options.grad_tol && last_step_norm < options.step_tol) {
            fit.converged = true;
            break;
        }

        const Eigen::VectorXd step = solve_spd(hess, grad);

        // Step-halving: accept only ascent.
        const Eigen::VectorXd beta_before = beta;
        const double ll_before = ll;
        double scale = 1.0;
        Eigen::VectorXd candidate;
        double ll_new = -std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int h = 0; h < 40; ++h) {
            candidate = beta_before + scale * step;
            ll_new = objective(xd, w, candidate);
            if (std::isfinite(ll_new) && ll_new >= ll_before) {
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;  // no ascent left; report as-is

        last_step_norm = (candidate - beta_before).lpNorm<Eigen::Infinity>();
        beta = candidate;
        ll = ll_new;

        if (beta.lpNorm<Eigen::Infinity>() > options.beta_cap) {
            // Clamp, but never below where the step started, so a warm-started
            // EM M-step stays monotone.
            Eigen::VectorXd clamped =
                beta.cwiseMax(-options.beta_cap).cwiseMin(options.beta_cap);
            const double ll_clamped = objective(xd, w, clamped);
            if (std::isfinite(ll_clamped) && ll_clamped >= ll_before) {
                beta = clamped;
                ll = ll_clamped;
            } else {
                beta = beta_before;
                ll = ll_before;
            }
            separated = true;
            ++iter;
            break;
        }
    }
    fit.iterations = iter;
    for (int j = 0; j < dim; ++j) fit.beta[j] = beta[j];

    if (!beta.allFinite()) throw NumericalError("logistic fit produced non-finite coefficients");

    if (separated) {
        fit.converged = false;
        fit.separation_capped = true;
        throw SeparationError(fit, "quasi-separation: coefficient cap " +
                                       std::to_string(options.beta_cap) + " reached");
    }
    return fit;
}

std::vector<double> predict_prob(const CovariateMatrix& x, std::span<const double> beta) {
    for (double b : beta) {
        if (!std::isfinite(b)) throw NumericalError("non-finite coefficient in predict_prob");
    }
    std::vector<double> p(x.rows());
    for (int i = 0; i < x.rows(); ++i) p[i] = sigmoid(x.linear_predictor(i, beta));
    return p;
}

double weighted_log_likelihood(const CovariateMatrix& x, std::span<const double> w,
                               std::span<const double> beta) {
    if (w.size() != static_cast<std::size_t>(x.rows())) {
        throw DimensionError("weight vector length != covariate rows");
    }
    double ll = 0.0;
    for (int i = 0; i < x.rows(); ++i) {
        const double t = x.linear_predictor(i, beta);
        ll += w[i] * t - softplus(t);
    }
    return ll;
}

std::vector<double> wald_standard_errors(const CovariateMatrix& x,
                                         std::span<const double> beta) {
    const int dim = x.cols() + 1;
    const Eigen::MatrixXd xd = design_matrix(x);
    Eigen::VectorXd pq(x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        const double p = sigmoid(x.linear_predictor(i, beta));
        pq[i] = p * (1.0 - p);
    }
    Eigen::MatrixXd info = xd.transpose() * pq.asDiagonal() * xd;
    info.diagonal().array() += 1e-12 * (info.trace() + 1.0);
    Eigen::MatrixXd cov = info.llt().solve(Eigen::MatrixXd::Identity(dim, dim));
    std::vector<double> se(dim);
    for (int j = 0; j < dim; ++j) se[j] = std::sqrt(std::max(cov(j, j), 0.0));
    return se;
}

}  // namespace lrcd
