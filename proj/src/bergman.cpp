#include "fock/bergman.hpp"

#include <cmath>

#include "fock/mittag_leffler.hpp"
#include "fock/phi.hpp"
#include "fock/special.hpp"

namespace fock {

ScaledComplex kernel_profile(double gamma, int n, double ell, Complex lambda) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("kernel_profile: gamma must be > 0");
    if (n < 1 || !(ell >= 1.0))
        throw std::invalid_argument("kernel_profile: bad n or ell");
    MLParams mp{1.0 / ell, 1.0 / ell, n - 1};
    ScaledComplex e = ml_deriv(mp, std::pow(gamma, 1.0 / ell) * lambda);
    double lc = std::log(ell) + (n / ell) * std::log(gamma) - log_factorial(n);
    return ScaledComplex(lc, 0.0) * e;
}

ScaledComplex kernel_eval(double gamma, int n, double ell,
                          const std::vector<Complex>& z,
                          const std::vector<Complex>& w) {
    if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n)
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    return kernel_profile(gamma, n, ell, dot_zwbar(z, w));
}

ScaledComplex kernel_series_oracle(double gamma, int n, double ell,
                                   const std::vector<Complex>& z,
                                   const std::vector<Complex>& w, int N) {
    // Each degree shell collapses through the multinomial theorem:
    // sum_{|nu|=d} z^nu conj(w)^nu / ||w^nu||^2
    //   = [l gamma^{(d+n)/l} (n-1+d)! / (n! Gamma((d+n)/l) d!)] (z.wbar)^d.
    Complex lam = dot_zwbar(z, w);
    ScaledComplex sum = ScaledComplex::zero();
    ScaledComplex lpow = ScaledComplex::one();
    for (int d = 0; d <= N; ++d) {
        double lc = std::log(ell) + ((d + n) / ell) * std::log(gamma) +
                    log_factorial(n - 1 + d) - log_factorial(n) -
                    log_gamma_pos((d + n) / ell) - log_factorial(d);
        sum += ScaledComplex(lc, 0.0) * lpow;
        lpow *= ScaledComplex::from(lam);
        if (lpow.is_zero()) break;
    }
    return sum;
}

MultiIndexPoly kernel_truncation(double gamma, int n, double ell,
                                 const std::vector<Complex>& w0, int D) {
    if (static_cast<int>(w0.size()) != n)
        throw std::invalid_argument("kernel_truncation: dimension mismatch");
    MultiIndexPoly f(n);
    for (int d = 0; d <= D; ++d) {
        double ls = std::log(ell) + ((d + n) / ell) * std::log(gamma) +
                    log_factorial(n - 1 + d) - log_factorial(n) -
                    log_gamma_pos((d + n) / ell) - log_factorial(d);
        for (const MultiIndex& nu : multi_indices_of_degree(n, d)) {
            // (w . conj(w0))^d = sum_{|nu|=d} (d!/nu!) conj(w0)^nu w^nu
            double lmult = log_factorial(d);
            Complex zc{1.0, 0.0};
            for (int j = 0; j < n; ++j) {
                lmult -= log_factorial(nu[j]);
                zc *= std::pow(std::conj(w0[j]), nu[j]);
            }
            f.set(nu, std::exp(ls + lmult) * zc);
        }
    }
    return f;
}

double dilation_identity_residual(double gamma, int n, double ell, double delta,
                                  const std::vector<Complex>& z,
                                  const std::vector<Complex>& w) {
    if (!(delta > 0.0))
        throw std::invalid_argument("dilation_identity_residual: delta <= 0");
    std::vector<Complex> dz(z), dw(w);
    for (auto& v : dz) v *= delta;
    for (auto& v : dw) v *= delta;
    ScaledComplex a = kernel_eval(gamma, n, ell, z, dw);
    ScaledComplex b = kernel_eval(gamma, n, ell, dz, w);
    ScaledComplex c =
        kernel_eval(gamma * std::pow(delta, ell), n, ell, z, w) *
        ScaledComplex(-n * std::log(delta), 0.0);
    auto rel = [&](const ScaledComplex& x, const ScaledComplex& y) {
        ScaledComplex d = x - y;
        if (d.is_zero()) return 0.0;
        return std::exp(d.log_mag() - a.log_mag());
    };
    return std::max(rel(a, b), rel(a, c));
}

LogReal kernel_norm_envelope(Exponent p, double alpha, double rho, double gamma,
                             int n, double ell, double abs_z) {
    p.validate();
    double inv_pprime = p.is_inf() ? 1.0 : 1.0 - 1.0 / p.val();
    double expo = rho + 2.0 * n * (ell - 1.0) * inv_pprime;
    return LogReal(expo * std::log1p(abs_z) +
                   (gamma * gamma / (2.0 * alpha)) *
                       std::pow(abs_z, 2.0 * ell));
}

RatioReport pointwise_envelope_check(
    double alpha, int n, double ell,
    const std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>>&
        pairs) {
    RatioReport rep;
    rep.params = {{"alpha", alpha}, {"n", (double)n}, {"ell", ell}};
    for (const auto& [z, w] : pairs) {
        Complex lam = dot_zwbar(z, w);
        double az = 0.0, aw = 0.0;
        for (const auto& v : z) az += std::norm(v);
        for (const auto& v : w) aw += std::norm(v);
        az = std::sqrt(az);
        aw = std::sqrt(aw);
        double env = n * (ell - 1.0) * (std::log1p(az) + std::log1p(aw)) +
                     phi_c_log(alpha, ell, lam);
        ScaledComplex k = kernel_eval(alpha, n, ell, z, w);
        rep.grid.push_back(std::abs(lam));
        rep.value_log.push_back(k.is_zero() ? -1e30 : k.log_mag());
        rep.envelope_log.push_back(env);
    }
    return rep;
}

}  // namespace fock
