#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrcd/logistic.hpp"
#include "lrcd/network.hpp"

namespace lrcd {

// The three pseudo-likelihood flavors. Poisson models all K+1 block-count
// columns; robust drops column K+1 so background-internal edges carry no
// assumption; multinomial conditions on the node degree.
enum class Variant { poisson, multinomial, robust };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

struct ModelParams {
    Variant variant = Variant::poisson;
    int k = 0;                  // community count K
    std::vector<double> beta;   // logistic coefficients, P+1
    std::vector<double> pi;     // length K, sums to 1
    // Row-major (K+1) x rate_cols(): Poisson/robust rates lambda or
    // multinomial row-stochastic theta.
    std::vector<double> rates;
    // mu_l = sum of lambda_{l,.} over the variant's column range (unused for
    // multinomial).
    std::vector<double> mu;

    int rate_cols() const { return variant == Variant::robust ? k : k + 1; }
    double rate_at(int l, int j) const {
        return rates[static_cast<std::size_t>(l) * rate_cols() + j];
    }
};

struct EmOptions {
    int restarts = 10;          // random-e restarts; a degree-split start is always added
    std::uint64_t seed = 0;
    double inner_tol = 1e-6;
    int max_inner = 200;
    int max_outer = 20;
};

struct FitResult {
    std::vector<double> z;      // row-major n x (K+1) posterior
    LabelVector c_hat;          // argmax of z, ties to the smallest group
    LabelVector e_final;        // blocking vector of the returned outer iterate
    ModelParams params;
    // One inner EM run per outer iteration; each run's values are
    // nondecreasing (EM ascent).
    std::vector<std::vector<double>> pll_trace;
    double final_pll = 0.0;
    int outer_iterations = 0;
    int restart_index = 0;      // 0 = degree-quantile start, 1.. = random starts
    bool outer_stable = true;
    std::vector<std::string> warnings;
};

// Posterior responsibilities for the given parameters; fills z (row-major
// n x (K+1), rows summing to 1) and returns the marginal pseudo-log-likelihood.
// All kernels are evaluated in log space with log-sum-exp normalization.
double e_step(const ModelParams& params, const BlockCounts& b, const CovariateMatrix& x,
              std::vector<double>& z);

// Parameter updates given responsibilities. pi and the rates have closed
// forms; beta comes from the weighted logistic fit with w_i = sum_{l<=K} z_il,
// warm-started at beta_start. If `warnings` is non-null a separation in the
// logistic fit is downgraded to the capped estimate plus a warning;
// otherwise SeparationError propagates.
ModelParams m_step(Variant variant, std::span<const double> z, const BlockCounts& b,
                   const CovariateMatrix& x, int k, std::span<const double> beta_start = {},
                   std::vector<std::string>* warnings = nullptr);

struct InnerResult {
    ModelParams params;
    std::vector<double> z;
    std::vector<double> pll_trace;
};

// Alternate e_step/m_step from init until the pseudo-log-likelihood improves
// by less than tol or max_iter expectation steps have run.
InnerResult inner_em(const ModelParams& init, const BlockCounts& b, const CovariateMatrix& x,
                     double tol, int max_iter, std::vector<std::string>* warnings = nullptr);

// Marginal pseudo-log-likelihood of the variant at the given parameters
// (up to the constants the formulation drops: b_ik! and multinomial
// coefficients). Comparable only within a variant.
double pseudo_log_likelihood(const ModelParams& params, const BlockCounts& b,
                             const CovariateMatrix& x);

// Hard labels from a one-hot blocking vector: initial parameters for an inner
// run are the M-step updates treating e as exact assignments.
ModelParams params_from_labels(Variant variant, const LabelVector& e, const BlockCounts& b,
                               const CovariateMatrix& x, std::span<const double> beta_start = {},
                               std::vector<std::string>* warnings = nullptr);

// One restart: rebuild block counts from e, run the inner EM, re-block from
// the posterior, and repeat until e is stable or max_outer is reached.
FitResult fit_single(const Network& net, const CovariateMatrix& x, int k, Variant variant,
                     const LabelVector& e_init, const EmOptions& options);

// Full fitter: one degree-quantile start plus `restarts` uniform-random
// blocking vectors, each run through fit_single; the restart with the highest
// final pseudo-log-likelihood wins. Restarts that fail (e.g. an empty group)
// are recorded and skipped; if all fail, FitError.
FitResult fit(const Network& net, const CovariateMatrix& x, int k, Variant variant,
              const EmOptions& options = {});

// Deterministic initializer: nodes sorted by (degree, index) and cut into
// K+1 equal chunks, lowest-degree chunk first.
LabelVector degree_quantile_split(const Network& net, int k);

}  // namespace lrcd
