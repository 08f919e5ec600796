#include "fock/decomposition.hpp"

#include <cmath>

#include "fock/bergman.hpp"
#include "fock/mittag_leffler.hpp"
#include "fock/phi.hpp"
#include "fock/special.hpp"

namespace fock {

namespace {

// Leibniz expansion of d^m/dlambda^m [E1(th^{1/l} lam) E2(tt^{1/l} lam)]
// needs per-term scale factors th^{j/l} tt^{(m-j)/l}.
struct RemCtx {
    double ell, theta, a, b2, c;
    double th, tt;
    Complex lam_th, lam_tt;
};

RemCtx make_ctx(double ell, double theta, Complex lambda) {
    RemCtx cx;
    cx.ell = ell;
    cx.theta = theta;
    cx.a = 1.0 / ell;
    cx.b2 = (ell + 1.0) / (2.0 * ell);
    cx.th = theta;
    cx.tt = 1.0 - theta;
    cx.c = std::pow(cx.th * cx.tt, (1.0 - ell) / (2.0 * ell)) / ell;
    cx.lam_th = std::pow(cx.th, 1.0 / ell) * lambda;
    cx.lam_tt = std::pow(cx.tt, 1.0 / ell) * lambda;
    return cx;
}

ScaledComplex remainder_direct(const RemCtx& cx, int m, Complex lambda,
                               double tol, double* cancel_log) {
    ScaledComplex e = ml_deriv({cx.a, cx.a, m}, lambda, tol);
    ScaledComplex prod = ScaledComplex::zero();
    for (int j = 0; j <= m; ++j) {
        double coef = binom(m, j) * std::pow(cx.th, j / cx.ell) *
                      std::pow(cx.tt, (m - j) / cx.ell);
        prod += ml_deriv({cx.a, cx.b2, j}, cx.lam_th, tol) *
                ml_deriv({cx.a, cx.b2, m - j}, cx.lam_tt, tol) * coef;
    }
    prod = prod * cx.c;
    ScaledComplex r = e - prod;
    double big = std::max(e.log_mag(), prod.log_mag());
    *cancel_log = r.is_zero() ? 1e30 : big - r.log_mag();
    return r;
}

ScaledComplex remainder_mpfr(const RemCtx& cx, int m, Complex lambda,
                             double cancel_log) {
    auto prec = static_cast<mpfr_prec_t>(
        128 + std::ceil(std::min(cancel_log, 2000.0) / std::log(2.0)));
    MpComplex e = ml_detail::series_mpfr({cx.a, cx.a, m}, lambda, prec);
    MpComplex prod(prec);
    for (int j = 0; j <= m; ++j) {
        double coef = binom(m, j) * std::pow(cx.th, j / cx.ell) *
                      std::pow(cx.tt, (m - j) / cx.ell);
        MpComplex t1 = ml_detail::series_mpfr({cx.a, cx.b2, j}, cx.lam_th, prec);
        MpComplex t2 =
            ml_detail::series_mpfr({cx.a, cx.b2, m - j}, cx.lam_tt, prec);
        prod += t1 * t2 * coef;
    }
    MpComplex r = e - prod * Mp(cx.c, prec);
    return ml_detail::to_scaled(r);
}

// Asymptotic regime: the exponential parts of E_{1/l,1/l} and of
// c E1 E2 coincide identically, so only tails (and exp-tail cross terms)
// remain. A common sector gate keeps the analytic cancellation consistent.
ScaledComplex remainder_asym(const RemCtx& cx, int m, Complex lambda,
                             double tol) {
    const double sector = 0.75 * kPi * cx.a;
    const bool in_sector = std::abs(std::arg(lambda)) <= sector;
    auto xpart = [&](int j, Complex lam2) {
        if (!in_sector) return ScaledComplex::zero();
        return ml_detail::asym_exp_part({cx.a, cx.b2, j}, lam2);
    };
    ScaledComplex te = ScaledComplex::from(
        ml_detail::asym_tail({cx.a, cx.a, m}, lambda, tol));
    ScaledComplex cross = ScaledComplex::zero();
    for (int j = 0; j <= m; ++j) {
        double coef = binom(m, j) * std::pow(cx.th, j / cx.ell) *
                      std::pow(cx.tt, (m - j) / cx.ell);
        ScaledComplex x1 = xpart(j, cx.lam_th);
        ScaledComplex x2 = xpart(m - j, cx.lam_tt);
        ScaledComplex t1 = ScaledComplex::from(
            ml_detail::asym_tail({cx.a, cx.b2, j}, cx.lam_th, tol));
        ScaledComplex t2 = ScaledComplex::from(
            ml_detail::asym_tail({cx.a, cx.b2, m - j}, cx.lam_tt, tol));
        cross += (x1 * t2 + t1 * x2 + t1 * t2) * coef;
    }
    return te - cross * cx.c;
}

}  // namespace

ScaledComplex remainder_deriv(double ell, double theta, int m, Complex lambda,
                              double tol) {
    if (!(ell >= 1.0))
        throw std::invalid_argument("remainder_deriv: ell must be >= 1");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("remainder_deriv: theta must be in (0,1)");
    if (m < 0) throw std::invalid_argument("remainder_deriv: m must be >= 0");
    if (ell == 1.0) return ScaledComplex::zero();

    RemCtx cx = make_ctx(ell, theta, lambda);
    double x = std::pow(std::abs(lambda), ell);
    double mn = std::min(cx.th, cx.tt);
    if (x <= ml_detail::kCrossover) {
        double cancel_log = 0.0;
        ScaledComplex r = remainder_direct(cx, m, lambda, tol, &cancel_log);
        if (cancel_log < std::log(1e6)) return r;
        return remainder_mpfr(cx, m, lambda, cancel_log + 40.0);
    }
    if (x * mn <= ml_detail::kSeriesFar) {
        // Mixed band: the smaller-scale factor is still in its series
        // regime; difference the full series at extended precision. The
        // cancellation never exceeds the dominant magnitude ~ e^{x}.
        return remainder_mpfr(cx, m, lambda, x + 40.0);
    }
    return remainder_asym(cx, m, lambda, tol);
}

ScaledComplex remainder_eval(double ell, double theta, Complex lambda,
                             double tol) {
    return remainder_deriv(ell, theta, 0, lambda, tol);
}

ScaledComplex factor_eval(FactorKind kind, int k, const DecompParams& dp,
                          Complex lambda) {
    dp.validate();
    const double ell = dp.ell, gamma = dp.gamma;
    const int n = dp.n;
    const double a = 1.0 / ell, b2 = (ell + 1.0) / (2.0 * ell);
    const double th = dp.theta(), tt = 1.0 - th;

    auto r_n = [&]() {
        double lc = std::log(ell) + (n / ell) * std::log(gamma) -
                    log_factorial(n);
        return ScaledComplex(lc, 0.0) *
               remainder_deriv(ell, th, n - 1,
                               std::pow(gamma, 1.0 / ell) * lambda);
    };

    switch (kind) {
        case FactorKind::R:
            if (k != n) throw std::out_of_range("factor_eval: R uses k=n");
            return r_n();
        case FactorKind::G: {
            if (k == n)
                return dp.alpha >= dp.beta ? r_n() : ScaledComplex::one();
            if (k < 0 || k >= n) throw std::out_of_range("factor_eval: bad k");
            double lc = std::log(binom(n - 1, k)) + (k / ell) * std::log(th) +
                        std::log(ell) + (n / ell) * std::log(gamma) +
                        std::log(dp.c_ltheta()) - log_factorial(n);
            return ScaledComplex(lc, 0.0) *
                   ml_deriv({a, b2, k}, std::pow(th * gamma, 1.0 / ell) * lambda);
        }
        case FactorKind::H: {
            if (k == n)
                return dp.alpha >= dp.beta ? ScaledComplex::one() : r_n();
            if (k < 0 || k >= n) throw std::out_of_range("factor_eval: bad k");
            double lc = ((n - 1 - k) / ell) * std::log(tt);
            return ScaledComplex(lc, 0.0) *
                   ml_deriv({a, b2, n - 1 - k},
                            std::pow(tt * gamma, 1.0 / ell) * lambda);
        }
    }
    throw std::logic_error("factor_eval: unreachable");
}

std::vector<double> factor_taylor(FactorKind kind, int k,
                                  const DecompParams& dp, int D) {
    dp.validate();
    if (D < 0) throw std::invalid_argument("factor_taylor: D must be >= 0");
    const double ell = dp.ell, gamma = dp.gamma;
    const int n = dp.n;
    const double a = 1.0 / ell, b2 = (ell + 1.0) / (2.0 * ell);
    const double th = dp.theta(), tt = 1.0 - th;

    auto deriv_series = [&](int m, double lpref, double scale) {
        std::vector<double> c(D + 1);
        for (int j = 0; j <= D; ++j)
            c[j] = std::exp(lpref + j * std::log(scale) +
                            log_factorial(j + m) - log_factorial(j) -
                            log_gamma_pos(a * (j + m) + b2));
        return c;
    };
    auto r_slot = [&]() {
        std::vector<double> c(D + 1, 0.0);
        if (ell == 1.0) return c;
        const double cth = dp.c_ltheta();
        // r_i: Taylor coefficients of R_{l,theta} itself.
        std::vector<double> r(D + n);
        for (int i = 0; i < D + n; ++i) {
            double conv = 0.0;
            for (int s = 0; s <= i; ++s)
                conv += std::exp((s / ell) * std::log(th) +
                                 ((i - s) / ell) * std::log(tt) -
                                 log_gamma_pos(a * s + b2) -
                                 log_gamma_pos(a * (i - s) + b2));
            r[i] = std::exp(-log_gamma_pos(a * (i + 1))) - cth * conv;
        }
        double lpref = std::log(ell) + (n / ell) * std::log(gamma) -
                       log_factorial(n);
        for (int j = 0; j <= D; ++j)
            c[j] = std::exp(lpref + (j / ell) * std::log(gamma) +
                            log_factorial(j + n - 1) - log_factorial(j)) *
                   r[j + n - 1];
        return c;
    };
    auto const_one = [&]() {
        std::vector<double> c(D + 1, 0.0);
        c[0] = 1.0;
        return c;
    };

    switch (kind) {
        case FactorKind::R:
            if (k != n) throw std::out_of_range("factor_taylor: R uses k=n");
            return r_slot();
        case FactorKind::G: {
            if (k == n) return dp.alpha >= dp.beta ? r_slot() : const_one();
            if (k < 0 || k >= n)
                throw std::out_of_range("factor_taylor: bad k");
            double lpref = std::log(binom(n - 1, k)) +
                           (k / ell) * std::log(th) + std::log(ell) +
                           (n / ell) * std::log(gamma) +
                           std::log(dp.c_ltheta()) - log_factorial(n);
            return deriv_series(k, lpref, std::pow(th * gamma, 1.0 / ell));
        }
        case FactorKind::H: {
            if (k == n) return dp.alpha >= dp.beta ? const_one() : r_slot();
            if (k < 0 || k >= n)
                throw std::out_of_range("factor_taylor: bad k");
            double lpref = ((n - 1 - k) / ell) * std::log(tt);
            return deriv_series(n - 1 - k, lpref,
                                std::pow(tt * gamma, 1.0 / ell));
        }
    }
    throw std::logic_error("factor_taylor: unreachable");
}

double identity_residual(const DecompParams& dp, const std::vector<Complex>& z,
                         const std::vector<Complex>& w) {
    dp.validate();
    Complex lam = dot_zwbar(w, z);
    ScaledComplex kern = kernel_profile(dp.gamma, dp.n, dp.ell, lam);
    ScaledComplex sum = factor_eval(FactorKind::R, dp.n, dp, lam);
    for (int k = 0; k < dp.n; ++k)
        sum += factor_eval(FactorKind::G, k, dp, lam) *
               factor_eval(FactorKind::H, k, dp, lam);
    ScaledComplex d = kern - sum;
    if (d.is_zero()) return 0.0;
    return std::exp(d.log_mag() - kern.log_mag());
}

namespace {

double factor_envelope_log(FactorKind kind, int k, const DecompParams& dp,
                           Exponent p, double rho, double eta, double az) {
    const double ell = dp.ell, gamma = dp.gamma;
    const double th = dp.theta(), tt = 1.0 - th;
    const int n = dp.n;
    double pv = p.is_inf() ? std::numeric_limits<double>::infinity() : p.val();
    double inv_p = p.is_inf() ? 0.0 : 1.0 / pv;
    double inv_pp = 1.0 - inv_p;
    double r2l = std::pow(az, 2.0 * ell);
    if (kind == FactorKind::G && k < n) {
        return (rho + (ell - 1.0) * (2.0 * k + 1.0 - 2.0 * n * inv_p)) *
                   std::log1p(az) +
               (th * th * gamma * gamma / (2.0 * dp.alpha)) * r2l;
    }
    if (kind == FactorKind::H && k < n) {
        return (eta + (ell - 1.0) *
                          (2.0 * (n - 1 - k) + 1.0 - 2.0 * n * inv_pp)) *
                   std::log1p(az) +
               (tt * tt * gamma * gamma / (2.0 * dp.beta)) * r2l;
    }
    // R_n, measured on the G side in F^p_{alpha,rho} or on the H side in
    // F^{p'}_{beta,eta}; the envelope carries both phi factors.
    bool g_side = (kind == FactorKind::G) ||
                  (kind == FactorKind::R && dp.alpha >= dp.beta);
    double wexp = g_side ? rho + (ell - 1.0) * (2.0 * n * inv_pp - 1.0)
                         : eta + (ell - 1.0) * (2.0 * n * inv_p - 1.0);
    double denom = g_side ? dp.alpha : dp.beta;
    double e1 = (th * th * gamma * gamma / (2.0 * denom)) * r2l;
    double e2 = (tt * tt * gamma * gamma / (2.0 * denom)) * r2l;
    LogReal both = LogReal(e1) + LogReal(e2);
    return wexp * std::log1p(az) + both.log();
}

}  // namespace

RatioReport factor_norm_report(FactorKind kind, int k, const DecompParams& dp,
                               Exponent p, double rho, double eta,
                               const std::vector<double>& grid, double tol) {
    dp.validate();
    bool g_side = (kind == FactorKind::G) ||
                  (kind == FactorKind::R && dp.alpha >= dp.beta);
    Exponent pe = g_side ? p : p.conjugate();
    SpaceParams sp{dp.n, dp.ell, g_side ? dp.alpha : dp.beta,
                   g_side ? rho : eta, pe};
    RatioReport rep;
    rep.params = {{"ell", dp.ell},     {"n", (double)dp.n},
                  {"gamma", dp.gamma}, {"alpha", dp.alpha},
                  {"beta", dp.beta},   {"theta", dp.theta()},
                  {"k", (double)k},
                  {"kind", kind == FactorKind::G ? 0.0
                           : kind == FactorKind::H ? 1.0 : 2.0}};
    for (double az : grid) {
        SliceFunction F{
            [&, kind, k](Complex lam) { return factor_eval(kind, k, dp, lam); },
            az};
        rep.grid.push_back(az);
        rep.value_log.push_back(norm_slice(F, sp, tol).log());
        rep.envelope_log.push_back(
            factor_envelope_log(kind, k, dp, p, rho, eta, az));
    }
    return rep;
}

RatioReport combined_norm_report(const DecompParams& dp, Exponent p, double rho,
                                 double eta, const std::vector<double>& grid,
                                 double tol) {
    dp.validate();
    SpaceParams spg{dp.n, dp.ell, dp.alpha, rho, p};
    SpaceParams sph{dp.n, dp.ell, dp.beta, eta, p.conjugate()};
    RatioReport rep;
    rep.params = {{"ell", dp.ell},     {"n", (double)dp.n},
                  {"gamma", dp.gamma}, {"alpha", dp.alpha},
                  {"beta", dp.beta},   {"theta", dp.theta()}};
    for (double az : grid) {
        LogReal total = LogReal::zero();
        for (int k = 0; k <= dp.n; ++k) {
            SliceFunction G{[&, k](Complex lam) {
                                return factor_eval(FactorKind::G, k, dp, lam);
                            },
                            az};
            SliceFunction H{[&, k](Complex lam) {
                                return factor_eval(FactorKind::H, k, dp, lam);
                            },
                            az};
            total += norm_slice(G, spg, tol) * norm_slice(H, sph, tol);
        }
        double env = (rho + eta) * std::log1p(az) +
                     (dp.gamma * dp.gamma / (2.0 * (dp.alpha + dp.beta))) *
                         std::pow(az, 2.0 * dp.ell);
        rep.grid.push_back(az);
        rep.value_log.push_back(total.log());
        rep.envelope_log.push_back(env);
    }
    return rep;
}

}  // namespace fock
