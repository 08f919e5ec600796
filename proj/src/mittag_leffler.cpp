#include "fock/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>
#include <utility>

#include "fock/phi.hpp"
#include "fock/special.hpp"

namespace fock {
namespace ml_detail {

bool in_series_regime(const MLParams& params, Complex lambda) {
    return std::pow(std::abs(lambda), 1.0 / params.a) <= kCrossover;
}

ScaledComplex to_scaled(const MpComplex& v) {
    Mp m = v.mag();
    if (m.is_zero()) return ScaledComplex::zero();
    double lm = log(m).to_double();
    double ph = atan2(v.im, v.re).to_double();
    return {lm, ph};
}

MpComplex series_mpfr(const MLParams& params, Complex lambda, mpfr_prec_t prec) {
    const double a = params.a, b = params.b;
    const int m = params.m;
    MpComplex sum(prec);
    MpComplex lpow(1.0, 0.0, prec);  // lambda^k
    MpComplex lam(lambda.real(), lambda.imag(), prec);
    Mp a_mp(a, prec), b_mp(b, prec);
    Mp max_mag(prec);
    Mp tiny = Mp::pow2(-static_cast<long>(prec) + 4, prec);

    // If a = p/q with a small denominator (always true for a = 1/l on the
    // grids used here), the Gamma arguments on each residue class mod q
    // advance by the integer p, so one Gamma per class seeds a cheap
    // rising-factorial recurrence instead of a Gamma call per term.
    int q = 0, p = 0;
    for (int d = 1; d <= 64; ++d) {
        double pd = a * d;
        if (std::abs(pd - std::round(pd)) < 1e-12 * d) {
            q = d;
            p = static_cast<int>(std::round(pd));
            break;
        }
    }
    std::vector<Mp> gam, arg;
    if (q > 0) {
        // Seed every residue class from the exact rational p/q. Using the
        // double-rounded a here would freeze a different argument error into
        // each class; the class subsums are individually huge and only cancel
        // against each other, so class-dependent perturbations get amplified
        // by the full cancellation factor.
        Mp a_exact = Mp(static_cast<double>(p), prec) /
                     Mp(static_cast<double>(q), prec);
        for (int r = 0; r < q; ++r) {
            Mp x = a_exact * (r + m) + b_mp;
            gam.push_back(gamma(x));
            arg.push_back(x);
        }
    }

    Mp fact(1.0, prec);  // (k+m)!/k!
    for (int j = 1; j <= m; ++j) fact *= static_cast<double>(j);

    int quiet = 0;
    for (int k = 0; k < 200000; ++k) {
        Mp coeff(prec);
        if (q > 0) {
            int r = k % q;
            coeff = fact / gam[r];
            for (int j = 0; j < p; ++j) {
                gam[r] *= arg[r];
                arg[r] += Mp(1.0, prec);
            }
        } else {
            coeff = fact / gamma(a_mp * (k + m) + b_mp);
        }
        MpComplex term = lpow * coeff;
        sum += term;
        Mp tm = term.mag();
        if (max_mag < tm) max_mag = tm;
        quiet = (tm < max_mag * tiny) ? quiet + 1 : 0;
        if (quiet >= 3) return sum;
        lpow = lpow * lam;
        fact *= static_cast<double>(k + m + 1);
        fact /= static_cast<double>(k + 1);
    }
    throw NonConvergence("series_mpfr: term cap reached", to_scaled(sum));
}

ScaledComplex series(const MLParams& params, Complex lambda, double tol) {
    const double a = params.a, b = params.b;
    const int m = params.m;
    if (lambda == 0.0) {
        return {log_factorial(m) - log_gamma_pos(a * m + b), 0.0};
    }
    const double log_abs = std::log(std::abs(lambda));
    const double arg = std::arg(lambda);
    Complex sum{0.0, 0.0}, comp{0.0, 0.0};  // Kahan compensation
    double max_term = 0.0;
    int quiet = 0;
    for (int k = 0; k < 100000; ++k) {
        double lt = log_factorial(k + m) - log_factorial(k) -
                    log_gamma_pos(a * (k + m) + b) + k * log_abs;
        Complex term = std::exp(lt) * cis(normalize_phase(k * arg));
        Complex y = term - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double tm = std::exp(lt);
        max_term = std::max(max_term, tm);
        quiet = (tm <= tol * std::abs(sum) || tm < 1e-300) ? quiet + 1 : 0;
        if (quiet >= 3) break;
        if (k == 99999)
            throw NonConvergence("series: term cap reached", ScaledComplex::from(sum));
    }
    double cancel = max_term / std::max(std::abs(sum), 1e-300);
    if (cancel > 1e5) {
        // Heavy cancellation: recompute with enough guard bits to absorb it.
        auto prec = static_cast<mpfr_prec_t>(
            96 + std::ceil(std::log2(std::min(cancel, 1e280))));
        return to_scaled(series_mpfr(params, lambda, prec));
    }
    return ScaledComplex::from(sum);
}

ScaledComplex asym_exp_part(const MLParams& params, Complex lambda) {
    const double a = params.a, b = params.b;
    const int m = params.m;
    const double arg = std::arg(lambda);
    const double sector = a * (m == 0 ? 7.0 * kPi / 8.0 : 3.0 * kPi / 4.0);
    if (std::abs(arg) > sector) return ScaledComplex::zero();

    // m-fold derivative of (1/a) lambda^{(1-b)/a} e^{lambda^{1/a}}, kept as a
    // sum of c_{ij} lambda^{e0 + i/a - j} e^{lambda^{1/a}}.
    const double e0 = (1.0 - b) / a;
    std::map<std::pair<int, int>, double> terms;
    terms[{0, 0}] = 1.0 / a;
    for (int d = 0; d < m; ++d) {
        std::map<std::pair<int, int>, double> next;
        for (const auto& [ij, c] : terms) {
            auto [i, j] = ij;
            double p = e0 + i / a - j;
            if (p != 0.0) next[{i, j + 1}] += c * p;
            next[{i + 1, j + 1}] += c / a;
        }
        terms = std::move(next);
    }

    const double log_abs = std::log(std::abs(lambda));
    ScaledComplex poly = ScaledComplex::zero();
    for (const auto& [ij, c] : terms) {
        auto [i, j] = ij;
        double p = e0 + i / a - j;
        poly += ScaledComplex(p * log_abs, p * arg) * c;
    }
    // lambda^{1/a} on the principal branch.
    double mu_mag = std::exp(log_abs / a);
    double mu_arg = arg / a;
    ScaledComplex exp_mu(mu_mag * std::cos(mu_arg), mu_mag * std::sin(mu_arg));
    return poly * exp_mu;
}

Complex asym_tail(const MLParams& params, Complex lambda, double tol) {
    const double a = params.a, b = params.b;
    const int m = params.m;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    Complex sum{0.0, 0.0};
    double prev_mag = std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (int k = 1; k <= 64; ++k) {
        double rg = recip_gamma(b - a * k);
        double lc = log_factorial(k + m - 1) - log_factorial(k - 1);
        Complex term = -sign * rg * std::exp(lc) * std::pow(lambda, -(k + m));
        double tm = std::abs(term);
        // Divergent series: stop at the smallest (nonzero) term. Exact zeros
        // from Gamma poles are skipped, not treated as convergence.
        if (tm > prev_mag) break;
        sum += term;
        if (tm > 0.0) prev_mag = tm;
        bool small = tm <= tol * std::abs(sum) && tm < 1e-8;
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 2 && std::abs(sum) > 0.0) break;
    }
    return sum;
}

ScaledComplex asymptotic(const MLParams& params, Complex lambda, double tol) {
    return asym_exp_part(params, lambda) +
           ScaledComplex::from(asym_tail(params, lambda, tol));
}

}  // namespace ml_detail

ScaledComplex ml_deriv(const MLParams& params, Complex lambda, double tol) {
    params.validate();
    if (params.a == 1.0 && params.b == 1.0) {
        // E^{(m)}_{1,1} = exp for every m; evaluate it exactly.
        return {lambda.real(), lambda.imag()};
    }
    if (std::pow(std::abs(lambda), 1.0 / params.a) <= ml_detail::kSeriesFar)
        return ml_detail::series(params, lambda, tol);
    return ml_detail::asymptotic(params, lambda, tol);
}

ScaledComplex ml_eval(const MLParams& params, Complex lambda, double tol) {
    if (params.m != 0)
        throw std::invalid_argument("ml_eval: use ml_deriv for m > 0");
    return ml_deriv(params, lambda, tol);
}

LogReal ml_envelope(double ell, double b, int m, Complex lambda) {
    if (!(ell >= 1.0)) throw std::invalid_argument("ml_envelope: ell must be >= 1");
    if (!(b > 0.0 && b <= 1.0))
        throw std::invalid_argument("ml_envelope: b must lie in (0,1]");
    if (m < 0) throw std::invalid_argument("ml_envelope: m must be >= 0");
    double expo = m * (ell - 1.0) + (1.0 - b) * ell;
    return LogReal(expo * std::log1p(std::abs(lambda)) +
                   phi_c_log(1.0, ell, lambda));
}

}  // namespace fock
