#pragma once

#include <optional>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"
#include "fock/scaled.hpp"

namespace fock {

struct DecompParams {
    double ell = 1.0;
    double gamma = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    int n = 1;
    std::optional<double> theta_override;  // default theta = alpha/(alpha+beta)

    double theta() const {
        return theta_override ? *theta_override : alpha / (alpha + beta);
    }
    double c_ltheta() const {
        double th = theta();
        return std::pow(th * (1.0 - th), (1.0 - ell) / (2.0 * ell)) / ell;
    }
    void validate() const {
        if (!(ell >= 1.0) || !(gamma > 0.0) || !(alpha > 0.0) ||
            !(beta > 0.0) || n < 1)
            throw std::invalid_argument("DecompParams: bad parameters");
        double th = theta();
        if (!(th > 0.0 && th < 1.0))
            throw std::invalid_argument("DecompParams: theta must be in (0,1)");
    }
};

/// R_{l,theta}(lambda) = E_{1/l,1/l}(lambda)
///   - c_{l,theta} E_{1/l,(l+1)/(2l)}(theta^{1/l} lambda)
///                 E_{1/l,(l+1)/(2l)}((1-theta)^{1/l} lambda).
ScaledComplex remainder_eval(double ell, double theta, Complex lambda,
                             double tol = 1e-10);

/// m-th derivative of remainder_eval, computed term-exactly (Leibniz on the
/// product, with cancellation-safe regimes).
ScaledComplex remainder_deriv(double ell, double theta, int m, Complex lambda,
                              double tol = 1e-10);

enum class FactorKind { G, H, R };

/// The kernel factors: for 0 <= k <= n-1,
///   G_k(lambda) = C(n-1,k) theta^{k/l} C_{l,gamma,theta}
///                 E^{(k)}_{1/l,(l+1)/(2l)}((theta gamma)^{1/l} lambda),
///   H_k(lambda) = (1-theta)^{(n-1-k)/l}
///                 E^{(n-1-k)}_{1/l,(l+1)/(2l)}(((1-theta) gamma)^{1/l} lambda),
/// and the k = n slot carries R_n (on the G side when alpha >= beta, on the
/// H side otherwise, with 1 in the opposite slot):
///   R_n(lambda) = (l gamma^{n/l}/n!) R^{(n-1)}_{l,theta}(gamma^{1/l} lambda).
ScaledComplex factor_eval(FactorKind kind, int k, const DecompParams& dp,
                          Complex lambda);

/// Taylor coefficients c_0..c_D (in lambda) of the chosen factor's profile,
/// exact up to floating point; used to build degree-truncated polynomial
/// slices w -> factor(w . conj(z)).
std::vector<double> factor_taylor(FactorKind kind, int k,
                                  const DecompParams& dp, int D);

/// Relative residual of K_gamma(w,z) = sum_k G_k(w.zbar) H_k(w.zbar) +
/// R_n(w.zbar).
double identity_residual(const DecompParams& dp,
                         const std::vector<Complex>& z,
                         const std::vector<Complex>& w);

/// Norm of the chosen factor slice against its growth envelope, over a grid
/// of |z|. G-side factors are measured in F^p_{alpha,rho}; H-side factors in
/// F^{p'}_{beta,eta}.
RatioReport factor_norm_report(FactorKind kind, int k, const DecompParams& dp,
                               Exponent p, double rho, double eta,
                               const std::vector<double>& grid,
                               double tol = 1e-6);

/// sum_k ||G_k||_{F^p_{alpha,rho}} ||H_k||_{F^{p'}_{beta,eta}} against
/// (1+|z|)^{rho+eta} e^{(gamma^2/(2(alpha+beta))) |z|^{2l}}.
RatioReport combined_norm_report(const DecompParams& dp, Exponent p, double rho,
                                 double eta, const std::vector<double>& grid,
                                 double tol = 1e-6);

}  // namespace fock
