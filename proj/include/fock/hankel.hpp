#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fock/core.hpp"
#include "fock/decomposition.hpp"
#include "fock/quadrature.hpp"

namespace fock {

/// Matrix of the small Hankel operator h_b(f) = conj(P_alpha(conj(f) b)) in
/// the orthonormal monomial basis of F^2_{alpha,rho}, truncated at total
/// degree N:
///   entry(nu,mu) = conj(b_{mu+nu}) ||w^{mu+nu}||^2_{F^2_alpha}
///                  ||w^nu||_{F^2_{alpha,rho}}
///                / (||w^nu||^2_{F^2_alpha} ||w^mu||_{F^2_{alpha,rho}}).
/// Singular values are those of the operator (conjugation does not change
/// them), computed on demand and cached in descending order.
struct HankelMatrix {
    int N = 0;
    int n = 1;
    double ell = 1.0, alpha = 1.0, rho = 0.0;
    std::vector<MultiIndex> basis;  // graded lex, |nu| <= N
    Eigen::MatrixXcd mat;
    std::vector<std::string> flags;

    const std::vector<double>& singular_values() const;

private:
    mutable std::vector<double> svals_;
};

HankelMatrix hankel_matrix(const MultiIndexPoly& b, double ell, double alpha,
                           double rho, int N);

/// conj(h_b(g)) = P_alpha(conj(g) b), exact on coefficients:
///   coeff(kappa) = sum_mu conj(g_mu) b_{mu+kappa}
///                  ||w^{mu+kappa}||^2_{F^2_alpha} / ||w^kappa||^2_{F^2_alpha}.
MultiIndexPoly hankel_apply_conj(const MultiIndexPoly& b,
                                 const MultiIndexPoly& g, double ell,
                                 double alpha);

/// (sum_k s_k^p)^{1/p} for finite p > 0; the largest singular value for
/// p = infinity (pass std::numeric_limits<double>::infinity()).
double schatten_norm(const HankelMatrix& M, double p);

/// The dilation that reduces alpha to 1: Psi_alpha(f)(z) = f(alpha^{-1/(2l)} z).
MultiIndexPoly psi_alpha(const MultiIndexPoly& f, double alpha, double ell);

/// Symbol b = degree-N truncation of K_{1/2}(., w0) at alpha = 1: the
/// operator has rank one with s_1 = 2^{-n/l} K_1(u,u), u = 2^{-1/l} w0
/// (exact at rho = 0; recorded for any rho).
struct RankOneReport {
    int numerical_rank = 0;  // #{s_k > 1e-8 s_1}
    double s1 = 0.0;
    double predicted_s1 = 0.0;
};
RankOneReport rank_one_check(const std::vector<Complex>& w0, double ell,
                             double rho, int N);

/// ||h_b||_{S_p} against ||b||_{F^p_{alpha/2, 2n(l-1)/p}} (rho_sym = 0 at
/// p = infinity).
struct SchattenSymbolReport {
    double schatten = 0.0;
    double symbol_norm = 0.0;
    double ratio = 1.0;
    bool degenerate = false;  // b = 0: ratio reported as 1 by convention
};
SchattenSymbolReport schatten_vs_symbol(const MultiIndexPoly& b, double ell,
                                        double alpha, double rho, double p,
                                        int N);

/// Relative deviation of sum_{k=0}^n <H_k(. conj(z)), conj(h_b(G_k(. conj(z))))>
/// from conj(b(z)), with the factors of the gamma=1, alpha=beta=1 kernel
/// decomposition truncated at degree N and the pairing exact on coefficients.
double representation_residual(const MultiIndexPoly& b,
                               const std::vector<Complex>& z, double ell,
                               int N);

}  // namespace fock
