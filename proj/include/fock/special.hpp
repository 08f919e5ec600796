#pragma once

#include <cmath>
#include <stdexcept>

namespace fock {

// lgamma for strictly positive arguments (no sign bookkeeping needed).
inline double log_gamma_pos(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma_pos: x must be > 0");
    return std::lgamma(x);
}

/// 1/Gamma(x), with the entire-function convention: exactly 0 at the poles
/// x = 0, -1, -2, ...
inline double recip_gamma(double x) {
    if (x > 0.0) return std::exp(-std::lgamma(x));
    double r = std::round(x);
    if (std::abs(x - r) < 1e-12 * std::max(1.0, std::abs(x))) return 0.0;
    return 1.0 / std::tgamma(x);
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0)));
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace fock
