#pragma once

#include <stdexcept>
#include <string>

#include "fock/mp.hpp"
#include "fock/scaled.hpp"

namespace fock {

/// Parameters of the two-parameter Mittag-Leffler function E_{a,b} and the
/// derivative order m of E^{(m)}_{a,b}.
struct MLParams {
    double a;
    double b;
    int m = 0;

    void validate() const {
        if (!(a > 0.0 && a <= 1.0))
            throw std::invalid_argument("MLParams: a must lie in (0,1]");
        if (!(b > 0.0)) throw std::invalid_argument("MLParams: b must be > 0");
        if (m < 0) throw std::invalid_argument("MLParams: m must be >= 0");
    }
};

/// Raised when a series or quadrature hits its term cap before reaching the
/// requested tolerance; carries the partial value for diagnostics.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, ScaledComplex partial_value)
        : std::runtime_error(what), partial(partial_value) {}
    ScaledComplex partial;
};

/// E_{a,b}(lambda) (requires params.m == 0).
ScaledComplex ml_eval(const MLParams& params, Complex lambda, double tol = 1e-12);

/// E^{(m)}_{a,b}(lambda).
ScaledComplex ml_deriv(const MLParams& params, Complex lambda, double tol = 1e-12);

/// Upper envelope (1+|lambda|)^{m(l-1)+(1-b)l} * phi_1(lambda) for
/// E^{(m)}_{1/l,b}; valid for l >= 1 and b in (0,1].
LogReal ml_envelope(double ell, double b, int m, Complex lambda);

namespace ml_detail {

// Series regime: |lambda|^{1/a} <= kCrossover; asymptotic branch beyond.
// Between kCrossover and kSeriesFar the series (with its cancellation-driven
// extended-precision fallback) is still the more accurate branch, and
// evaluation prefers it; the asymptotic truncation error near the crossover
// sits around 1e-7 relative to the dominant scale, which products of factors
// can amplify, while the guarded series stays at working precision.
inline constexpr double kCrossover = 25.0;
inline constexpr double kSeriesFar = 35.0;

bool in_series_regime(const MLParams& params, Complex lambda);

// Power series, double precision with compensated summation; falls back to
// the MPFR path when internal cancellation would spoil the result.
ScaledComplex series(const MLParams& params, Complex lambda, double tol);

// Full asymptotic branch: sector-gated exponential part plus algebraic tail.
ScaledComplex asymptotic(const MLParams& params, Complex lambda, double tol);

// The exponential part alone (zero outside the sector) and the algebraic
// tail alone; exposed so the kernel-decomposition remainder can combine them
// without catastrophic cancellation.
ScaledComplex asym_exp_part(const MLParams& params, Complex lambda);
Complex asym_tail(const MLParams& params, Complex lambda, double tol);

// High-precision series sum, for callers that must difference exponentially
// close quantities before rounding.
MpComplex series_mpfr(const MLParams& params, Complex lambda, mpfr_prec_t prec);

ScaledComplex to_scaled(const MpComplex& v);

}  // namespace ml_detail

}  // namespace fock
