#include "lrcd/em.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lrcd/mathutil.hpp"
#include "lrcd/rng.hpp"

namespace lrcd {

namespace {

constexpr double kRateFloor = 1e-10;  // applied before taking logs
constexpr double kMassEps = 1e-12;    // group below this posterior mass is empty

void check_shapes(const ModelParams& params, const BlockCounts& b, const CovariateMatrix& x) {
    const int groups = params.k + 1;
    if (b.cols != groups) throw DimensionError("block counts have wrong group count");
    if (b.n != x.rows()) throw DimensionError("block counts and covariates disagree on n");
    if (params.pi.size() != static_cast<std::size_t>(params.k)) {
        throw DimensionError("pi length != K");
    }
    if (params.beta.size() != static_cast<std::size_t>(x.cols()) + 1) {
        throw DimensionError("beta length != P+1");
    }
    if (params.rates.size() !=
        static_cast<std::size_t>(groups) * params.rate_cols()) {
        throw DimensionError("rate matrix has wrong shape");
    }
}

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::poisson: return "poisson";
        case Variant::multinomial: return "multinomial";
        case Variant::robust: return "robust";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "poisson") return Variant::poisson;
    if (name == "multinomial") return Variant::multinomial;
    if (name == "robust") return Variant::robust;
    return std::nullopt;
}

double e_step(const ModelParams& params, const BlockCounts& b, const CovariateMatrix& x,
              std::vector<double>& z) {
    check_shapes(params, b, x);
    const int n = b.n;
    const int k = params.k;
    const int groups = k + 1;
    const int cols = params.rate_cols();
    const bool multinomial = params.variant == Variant::multinomial;

    // log pi and log rates, floored before logs; 0*log(0) resolves to 0
    // because a zero count skips the floored log entirely.
    std::vector<double> log_pi(k);
    for (int l = 0; l < k; ++l) log_pi[l] = std::log(std::max(params.pi[l], kRateFloor));
    std::vector<double> log_rate(static_cast<std::size_t>(groups) * cols);
    for (std::size_t idx = 0; idx < log_rate.size(); ++idx) {
        log_rate[idx] = std::log(std::max(params.rates[idx], kRateFloor));
    }

    z.assign(static_cast<std::size_t>(n) * groups, 0.0);
    double total = 0.0;
    std::vector<double> s(groups);
    for (int i = 0; i < n; ++i) {
        const double t = x.linear_predictor(i, params.beta);
        const double lp_comm = log_sigmoid(t);    // log pr(y=1 | x)
        const double lp_back = log_sigmoid(-t);   // log pr(y=0 | x)
        const int* brow = b.b.data() + static_cast<std::size_t>(i) * groups;
        for (int l = 0; l < groups; ++l) {
            double v = (l < k) ? lp_comm + log_pi[l] : lp_back;
            if (!multinomial) v -= params.mu[l];
            const double* lr = log_rate.data() + static_cast<std::size_t>(l) * cols;
            for (int j = 0; j < cols; ++j) {
                if (brow[j] != 0) v += brow[j] * lr[j];
            }
            s[l] = v;
        }
        const double m = *std::max_element(s.begin(), s.end());
        if (!std::isfinite(m)) {
            throw NumericalError("posterior mass vanished for node " + std::to_string(i));
        }
        double norm = 0.0;
        double* zrow = z.data() + static_cast<std::size_t>(i) * groups;
        for (int l = 0; l < groups; ++l) {
            zrow[l] = std::exp(s[l] - m);
            norm += zrow[l];
        }
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NumericalError("posterior mass vanished for node " + std::to_string(i));
        }
        for (int l = 0; l < groups; ++l) zrow[l] /= norm;
        total += m + std::log(norm);
    }
    if (!std::isfinite(total)) throw NumericalError("non-finite pseudo-log-likelihood");
    return total;
}

ModelParams m_step(Variant variant, std::span<const double> z, const BlockCounts& b,
                   const CovariateMatrix& x, int k, std::span<const double> beta_start,
                   std::vector<std::string>* warnings) {
    const int n = b.n;
    const int groups = k + 1;
    if (b.cols != groups) throw DimensionError("block counts have wrong group count");
    if (z.size() != static_cast<std::size_t>(n) * groups) {
        throw DimensionError("posterior matrix has wrong shape");
    }

    ModelParams params;
    params.variant = variant;
    params.k = k;
    const int cols = params.rate_cols();

    std::vector<double> mass(groups, 0.0);        // sum_i z_il
    std::vector<double> degree_mass(groups, 0.0); // sum_i z_il d_i
    std::vector<double> w(n, 0.0);                // community mass per node
    for (int i = 0; i < n; ++i) {
        const double* zrow = z.data() + static_cast<std::size_t>(i) * groups;
        double wi = 0.0;
        for (int l = 0; l < groups; ++l) {
            mass[l] += zrow[l];
            degree_mass[l] += zrow[l] * b.d[i];
            if (l < k) wi += zrow[l];
        }
        w[i] = std::clamp(wi, 0.0, 1.0);
    }

    double community_mass = 0.0;
    for (int l = 0; l < k; ++l) {
        if (mass[l] < kMassEps) {
            throw EmptyGroupError(l + 1, "group " + std::to_string(l + 1) +
                                             " has no posterior mass");
        }
        community_mass += mass[l];
    }
    params.pi.resize(k);
    for (int l = 0; l < k; ++l) params.pi[l] = mass[l] / community_mass;

    // Weighted count sums per (group, block column).
    std::vector<double> numer(static_cast<std::size_t>(groups) * cols, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* zrow = z.data() + static_cast<std::size_t>(i) * groups;
        const int* brow = b.b.data() + static_cast<std::size_t>(i) * groups;
        for (int l = 0; l < groups; ++l) {
            const double zl = zrow[l];
            if (zl == 0.0) continue;
            double* nrow = numer.data() + static_cast<std::size_t>(l) * cols;
            for (int j = 0; j < cols; ++j) nrow[j] += zl * brow[j];
        }
    }

    params.rates.assign(static_cast<std::size_t>(groups) * cols, 0.0);
    if (variant == Variant::multinomial) {
        for (int l = 0; l < groups; ++l) {
            if (mass[l] < kMassEps) {
                // Empty background: keep the row stochastic but uninformative.
                for (int j = 0; j < cols; ++j) {
                    params.rates[static_cast<std::size_t>(l) * cols + j] = 1.0 / cols;
                }
                continue;
            }
            if (degree_mass[l] <= 0.0) {
                throw DegenerateDegreeError(
                    l + 1, "group " + std::to_string(l + 1) +
                               " carries mass only on degree-zero nodes");
            }
            for (int j = 0; j < cols; ++j) {
                params.rates[static_cast<std::size_t>(l) * cols + j] =
                    numer[static_cast<std::size_t>(l) * cols + j] / degree_mass[l];
            }
        }
    } else {
        for (int l = 0; l < groups; ++l) {
            if (mass[l] < kMassEps) continue;  // empty background row stays zero
            for (int j = 0; j < cols; ++j) {
                params.rates[static_cast<std::size_t>(l) * cols + j] =
                    numer[static_cast<std::size_t>(l) * cols + j] / mass[l];
            }
        }
        params.mu.assign(groups, 0.0);
        for (int l = 0; l < groups; ++l) {
            for (int j = 0; j < cols; ++j) {
                params.mu[l] += params.rates[static_cast<std::size_t>(l) * cols + j];
            }
        }
    }

    LogisticOptions lopt;
    lopt.start.assign(beta_start.begin(), beta_start.end());
    try {
        params.beta = fit_weighted(x, w, lopt).beta;
    } catch (const SeparationError& err) {
        if (!warnings) throw;
        params.beta = err.capped.beta;
        warnings->push_back(std::string("logistic separation capped: ") + err.what());
    }
    return params;
}

InnerResult inner_em(const ModelParams& init, const BlockCounts& b, const CovariateMatrix& x,
                     double tol, int max_iter, std::vector<std::string>* warnings) {
    InnerResult out;
    out.params = init;
    double prev = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < max_iter; ++t) {
        const double pll = e_step(out.params, b, x, out.z);
        out.pll_trace.push_back(pll);
        if (t > 0 && pll - prev < tol) break;
        prev = pll;
        if (t + 1 < max_iter) {
            out.params = m_step(out.params.variant, out.z, b, x, out.params.k,
                                out.params.beta, warnings);
        }
    }
    return out;
}

double pseudo_log_likelihood(const ModelParams& params, const BlockCounts& b,
                             const CovariateMatrix& x) {
    std::vector<double> scratch;
    return e_step(params, b, x, scratch);
}

ModelParams params_from_labels(Variant variant, const LabelVector& e, const BlockCounts& b,
                               const CovariateMatrix& x, std::span<const double> beta_start,
                               std::vector<std::string>* warnings) {
    const int groups = e.group_count();
    std::vector<double> z(static_cast<std::size_t>(e.size()) * groups, 0.0);
    for (int i = 0; i < e.size(); ++i) {
        z[static_cast<std::size_t>(i) * groups + (e[i] - 1)] = 1.0;
    }
    return m_step(variant, z, b, x, e.k(), beta_start, warnings);
}

namespace {

LabelVector argmax_labels(const std::vector<double>& z, int n, int k) {
    const int groups = k + 1;
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        const double* zrow = z.data() + static_cast<std::size_t>(i) * groups;
        int best = 0;
        for (int l = 1; l < groups; ++l) {
            if (zrow[l] > zrow[best]) best = l;  // ties keep the smaller index
        }
        labels[i] = best + 1;
    }
    return LabelVector(std::move(labels), k);
}

}  // namespace

FitResult fit_single(const Network& net, const CovariateMatrix& x, int k, Variant variant,
                     const LabelVector& e_init, const EmOptions& options) {
    if (e_init.size() != net.node_count()) {
        throw DimensionError("initial blocking length != node count");
    }
    if (e_init.k() != k) throw DimensionError("initial blocking K mismatch");
    if (options.max_outer < 1) throw ConfigError("max_outer must be >= 1");

    struct OuterState {
        std::vector<double> z;
        ModelParams params;
        LabelVector e_used;
        LabelVector e_next;
        double pll;
    };

    std::vector<std::string> warnings;
    std::vector<std::vector<double>> trace_runs;
    std::optional<OuterState> best;
    std::optional<OuterState> final_state;
    std::vector<double> prev_beta;

    LabelVector e = e_init;
    int outer = 0;
    bool stable = false;
    for (; outer < options.max_outer; ++outer) {
        const BlockCounts b = block_counts(net, e);
        ModelParams init = params_from_labels(variant, e, b, x, prev_beta, &warnings);
        InnerResult inner =
            inner_em(init, b, x, options.inner_tol, options.max_inner, &warnings);
        prev_beta = inner.params.beta;
        trace_runs.push_back(inner.pll_trace);

        LabelVector e_next = argmax_labels(inner.z, net.node_count(), k);
        OuterState state{std::move(inner.z), std::move(inner.params), e, std::move(e_next),
                         inner.pll_trace.back()};

        if (!best || state.pll > best->pll) best = state;
        if (state.e_next == e) {
            stable = true;
            final_state = std::move(state);
            ++outer;
            break;
        }
        e = state.e_next;
        final_state = std::move(state);
    }

    const OuterState& chosen = stable ? *final_state : *best;
    if (!stable) {
        warnings.push_back("blocking vector did not stabilize within " +
                           std::to_string(options.max_outer) +
                           " outer iterations; best iterate returned");
    }

    FitResult result{
        chosen.z,       chosen.e_next,  chosen.e_used, chosen.params,
        trace_runs,     chosen.pll,     outer,         0,
        stable,         warnings,
    };
    return result;
}

LabelVector degree_quantile_split(const Network& net, int k) {
    const int n = net.node_count();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return net.degree(a) < net.degree(b); });
    // Lowest-degree chunk becomes the background; the rest fill groups 1..K.
    std::vector<int> labels(n);
    const int groups = k + 1;
    for (int pos = 0; pos < n; ++pos) {
        const int chunk = static_cast<int>(static_cast<long long>(pos) * groups / n);
        labels[order[pos]] = (chunk == 0) ? k + 1 : chunk;
    }
    return LabelVector(std::move(labels), k);
}

FitResult fit(const Network& net, const CovariateMatrix& x, int k, Variant variant,
              const EmOptions& options) {
    if (k < 1) throw ConfigError("K must be >= 1");
    if (net.node_count() <= k + 1) throw ConfigError("need n > K+1 nodes");
    if (x.rows() != net.node_count()) {
        throw DimensionError("covariate rows != node count");
    }
    if (options.restarts < 0) throw ConfigError("restarts must be >= 0");

    const int n = net.node_count();
    std::optional<FitResult> winner;
    std::vector<std::string> failures;

    for (int r = 0; r <= options.restarts; ++r) {
        LabelVector e_init = [&] {
            if (r == 0) return degree_quantile_split(net, k);
            SplitMix64 rng(SplitMix64::derive(options.seed, static_cast<std::uint64_t>(r)));
            std::vector<int> labels(n);
            for (int i = 0; i < n; ++i) {
                labels[i] = 1 + std::min(k, static_cast<int>(rng.next_double() * (k + 1)));
            }
            return LabelVector(std::move(labels), k);
        }();
        try {
            FitResult res = fit_single(net, x, k, variant, e_init, options);
            res.restart_index = r;
            if (!winner || res.final_pll > winner->final_pll) winner = std::move(res);
        } catch (const Error& err) {
            failures.push_back("restart " + std::to_string(r) + ": " + err.what());
        }
    }
    if (!winner) {
        std::string msg = "all restarts failed:";
        for (const auto& f : failures) msg += "\n  " + f;
        throw FitError(msg);
    }
    for (const auto& f : failures) winner->warnings.push_back("abandoned " + f);
    return std::move(*winner);
}

}  // namespace lrcd
