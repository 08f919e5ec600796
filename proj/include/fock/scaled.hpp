#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace fock {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Wrap a phase to the principal range (-pi, pi].
inline double normalize_phase(double p) {
    p = std::remainder(p, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    return p;
}

inline Complex cis(double p) { return {std::cos(p), std::sin(p)}; }

/// A nonzero complex value stored as (log of modulus, principal phase),
/// so that quantities like e^{|z|^{2l}} survive far past the double range.
/// log_mag == -inf encodes zero.
class ScaledComplex {
public:
    ScaledComplex()
        : log_mag_(-std::numeric_limits<double>::infinity()), phase_(0.0) {}
    ScaledComplex(double log_mag, double phase)
        : log_mag_(log_mag), phase_(normalize_phase(phase)) {}

    static ScaledComplex zero() { return {}; }
    static ScaledComplex one() { return {0.0, 0.0}; }

    static ScaledComplex from(const Complex& z) {
        double m = std::abs(z);
        if (m == 0.0) return zero();
        return {std::log(m), std::arg(z)};
    }
    static ScaledComplex from_real(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0 ? 0.0 : kPi};
    }

    double log_mag() const { return log_mag_; }
    double phase() const { return phase_; }
    bool is_zero() const { return std::isinf(log_mag_) && log_mag_ < 0; }

    /// Decode to a native complex; overflows knowingly for log_mag > ~709.
    Complex value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::exp(log_mag_) * cis(phase_);
    }

    ScaledComplex operator-() const {
        if (is_zero()) return *this;
        return {log_mag_, phase_ + kPi};
    }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return {a.log_mag_ + b.log_mag_, a.phase_ + b.phase_};
    }
    friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return zero();
        return {a.log_mag_ - b.log_mag_, a.phase_ - b.phase_};
    }
    friend ScaledComplex operator*(const ScaledComplex& a, double s) {
        return a * from_real(s);
    }
    friend ScaledComplex operator*(double s, const ScaledComplex& a) {
        return a * from_real(s);
    }

    // Sums are carried out in the frame of the larger magnitude.
    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const ScaledComplex& big = (a.log_mag_ >= b.log_mag_) ? a : b;
        const ScaledComplex& small = (a.log_mag_ >= b.log_mag_) ? b : a;
        Complex r = std::exp(small.log_mag_ - big.log_mag_) *
                    cis(small.phase_ - big.phase_);
        Complex s = 1.0 + r;
        double m = std::abs(s);
        if (m == 0.0) return zero();
        return {big.log_mag_ + std::log(m), big.phase_ + std::arg(s)};
    }
    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
        return a + (-b);
    }

    ScaledComplex& operator+=(const ScaledComplex& b) { return *this = *this + b; }
    ScaledComplex& operator*=(const ScaledComplex& b) { return *this = *this * b; }

private:
    double log_mag_;
    double phase_;
};

/// A non-negative real stored as its natural log (-inf encodes zero).
class LogReal {
public:
    LogReal() : log_(-std::numeric_limits<double>::infinity()) {}
    explicit LogReal(double log_value) : log_(log_value) {}

    static LogReal zero() { return {}; }
    static LogReal one() { return LogReal(0.0); }
    static LogReal from(double x) {
        return x > 0.0 ? LogReal(std::log(x)) : zero();
    }

    double log() const { return log_; }
    bool is_zero() const { return std::isinf(log_) && log_ < 0; }
    double value() const { return std::exp(log_); }

    LogReal& operator+=(const LogReal& b) {
        if (b.is_zero()) return *this;
        if (is_zero()) { log_ = b.log_; return *this; }
        double hi = std::max(log_, b.log_);
        double lo = std::min(log_, b.log_);
        log_ = hi + std::log1p(std::exp(lo - hi));
        return *this;
    }
    LogReal& operator*=(const LogReal& b) { log_ += b.log_; return *this; }

    friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }
    friend LogReal operator*(LogReal a, const LogReal& b) { return a *= b; }
    friend LogReal operator/(const LogReal& a, const LogReal& b) {
        return LogReal(a.log_ - b.log_);
    }
    friend bool operator<(const LogReal& a, const LogReal& b) { return a.log_ < b.log_; }

    LogReal pow(double e) const {
        if (is_zero()) return zero();
        return LogReal(e * log_);
    }

private:
    double log_;
};

}  // namespace fock
