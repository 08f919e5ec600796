#pragma once

#include <mpfr.h>

#include <utility>

namespace fock {

/// Thin RAII wrapper over an mpfr_t with a fixed precision. Only the handful
/// of operations the series fallback needs.
class Mp {
public:
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mp(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Mp(const Mp& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mp& operator=(const Mp& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Mp& operator=(double x) { mpfr_set_d(v_, x, MPFR_RNDN); return *this; }
    ~Mp() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    Mp& operator+=(const Mp& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Mp& operator-=(const Mp& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Mp& operator*=(const Mp& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Mp& operator/=(const Mp& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Mp& operator*=(double s) { mpfr_mul_d(v_, v_, s, MPFR_RNDN); return *this; }
    Mp& operator/=(double s) { mpfr_div_d(v_, v_, s, MPFR_RNDN); return *this; }

    friend Mp operator+(Mp a, const Mp& b) { return a += b; }
    friend Mp operator-(Mp a, const Mp& b) { return a -= b; }
    friend Mp operator*(Mp a, const Mp& b) { return a *= b; }
    friend Mp operator/(Mp a, const Mp& b) { return a /= b; }
    friend Mp operator*(Mp a, double s) { return a *= s; }

    Mp operator-() const { Mp r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

    friend Mp gamma(const Mp& x) {
        Mp r(x.prec());
        mpfr_gamma(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Mp abs(const Mp& x) {
        Mp r(x.prec());
        mpfr_abs(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Mp hypot(const Mp& a, const Mp& b) {
        Mp r(a.prec());
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Mp log(const Mp& x) {
        Mp r(x.prec());
        mpfr_log(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Mp atan2(const Mp& y, const Mp& x) {
        Mp r(y.prec());
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Mp& a, const Mp& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /// 2^e at the given precision (e may lie far outside the double range).
    static Mp pow2(long e, mpfr_prec_t prec) {
        Mp r(prec);
        mpfr_set_ui(r.v_, 1, MPFR_RNDN);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

struct MpComplex {
    Mp re, im;

    explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    MpComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    MpComplex& operator+=(const MpComplex& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    MpComplex& operator-=(const MpComplex& b) {
        re -= b.re;
        im -= b.im;
        return *this;
    }
    friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
    friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        MpComplex r(a.re.prec());
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        return r;
    }
    friend MpComplex operator*(MpComplex a, const Mp& s) {
        a.re *= s;
        a.im *= s;
        return a;
    }
    friend MpComplex operator*(MpComplex a, double s) {
        a.re *= s;
        a.im *= s;
        return a;
    }

    Mp mag() const { return hypot(re, im); }
};

}  // namespace fock
