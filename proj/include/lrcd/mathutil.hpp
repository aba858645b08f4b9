#pragma once

#include <cmath>

namespace lrcd {

// log(1 + e^t) without overflow.
inline double softplus(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// e^t / (1 + e^t), branch chosen so the exponent never overflows.
// Clamped into the open interval so callers may take log(p) and log(1-p).
inline double sigmoid(double t) {
    double p;
    if (t >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-t));
    } else {
        const double e = std::exp(t);
        p = e / (1.0 + e);
    }
    if (p <= 0.0) p = 1e-300;
    if (p >= 1.0) p = 1.0 - 1e-16;
    return p;
}

// log sigmoid(t) = -softplus(-t); finite for all finite t.
inline double log_sigmoid(double t) { return -softplus(-t); }

}  // namespace lrcd
