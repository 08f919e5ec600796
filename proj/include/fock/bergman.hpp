#pragma once

#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"
#include "fock/scaled.hpp"

namespace fock {

inline Complex dot_zwbar(const std::vector<Complex>& z,
                         const std::vector<Complex>& w) {
    if (z.size() != w.size())
        throw std::invalid_argument("dot_zwbar: dimension mismatch");
    Complex s{0.0, 0.0};
    for (size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

/// H_gamma(lambda) = (l gamma^{n/l}/n!) E^{(n-1)}_{1/l,1/l}(gamma^{1/l} lambda),
/// so that K_gamma(z,w) = H_gamma(z . conj(w)).
ScaledComplex kernel_profile(double gamma, int n, double ell, Complex lambda);

ScaledComplex kernel_eval(double gamma, int n, double ell,
                          const std::vector<Complex>& z,
                          const std::vector<Complex>& w);

/// Independent oracle: the monomial sum sum_nu z^nu conj(w)^nu / ||w^nu||^2
/// truncated at total degree N (collapsed over each degree shell).
ScaledComplex kernel_series_oracle(double gamma, int n, double ell,
                                   const std::vector<Complex>& z,
                                   const std::vector<Complex>& w, int N);

/// Degree-D truncation of w -> K_gamma(w, w0) as a coefficient polynomial,
/// through the degree-shell collapse of the monomial series.
MultiIndexPoly kernel_truncation(double gamma, int n, double ell,
                                 const std::vector<Complex>& w0, int D);

/// Relative residual of K_gamma(z, dw) = K_gamma(dz, w) = d^{-n} K_{gamma
/// d^l}(z, w).
double dilation_identity_residual(double gamma, int n, double ell, double delta,
                                  const std::vector<Complex>& z,
                                  const std::vector<Complex>& w);

/// (1+|z|)^{rho + 2n(l-1)/p'} e^{(gamma^2/(2 alpha)) |z|^{2l}}.
LogReal kernel_norm_envelope(Exponent p, double alpha, double rho, double gamma,
                             int n, double ell, double abs_z);

/// |K_alpha(z,w)| against (1+|z|)^{n(l-1)} (1+|w|)^{n(l-1)} phi_alpha(z.wbar)
/// over a list of point pairs; grid entries record |z . conj(w)|.
RatioReport pointwise_envelope_check(
    double alpha, int n, double ell,
    const std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>>&
        pairs);

}  // namespace fock
