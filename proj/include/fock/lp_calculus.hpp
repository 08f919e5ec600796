#pragma once

#include <map>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"

namespace fock {

/// d/dw_j of a coefficient polynomial (axis j is 1-based):
/// coefficient of nu in the output = (nu_j + 1) * coefficient of nu + e_j.
MultiIndexPoly partial_derivative(const MultiIndexPoly& f, int j);

/// Iterated partial d^nu f.
MultiIndexPoly partial_derivative_multi(const MultiIndexPoly& f,
                                        const MultiIndex& nu);

/// All partials of exact order m: the layer behind |grad^m f| =
/// sum_{|nu|=m} |d^nu f|.
struct GradientLayer {
    int order = 0;
    std::map<MultiIndex, MultiIndexPoly, GradedLexLess> parts;
};
GradientLayer gradient_layer(const MultiIndexPoly& f, int m);

/// |grad^m f(0)| = sum_{|nu|=m} |nu! f_nu|.
double gradient_at_zero(const MultiIndexPoly& f, int m);

/// || sum_{|nu|=k} |d^nu f| ||_{L^p_{alpha,rho}} with the SpaceParams taken
/// verbatim (callers apply the rho shift). The integrand is a non-holomorphic
/// scalar, so this goes through the pointwise cubature path.
LogReal gradient_norm(const MultiIndexPoly& f, int k, const SpaceParams& sp,
                      double tol = 1e-7);

/// [ sum_{m=0}^{k-1} |grad^m f(0)| + ||grad^k f||_{L^p_{alpha,rho-k(2l-1)}} ]
///   / ||f||_{F^p_{alpha,rho}}.
/// Throws std::domain_error if ||f|| underflows to zero.
double lp_ratio(const MultiIndexPoly& f, int k, const SpaceParams& sp,
                double tol = 1e-7);

/// S_j(g)(z) = z_j Integral_0^1 g(tz) dt (axis j is 1-based); exact on
/// coefficients: coefficient of nu + e_j = (coefficient of nu in g)/(|nu|+1).
MultiIndexPoly sj_apply(const MultiIndexPoly& g, int j);

/// Max coefficient deviation of f(0) + sum_j S_j(d_j f) from f. Exactly zero
/// in real arithmetic; tiny rounding in floating point.
double reconstruction_residual(const MultiIndexPoly& f);

}  // namespace fock
