#include "fock/lp_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fock/special.hpp"

namespace fock {

MultiIndexPoly partial_derivative(const MultiIndexPoly& f, int j) {
    if (j < 1 || j > f.dim())
        throw std::invalid_argument("partial_derivative: axis out of range");
    MultiIndexPoly out(f.dim());
    for (const auto& [nu, c] : f.terms()) {
        if (nu[j - 1] == 0) continue;
        MultiIndex mu = nu;
        mu[j - 1] -= 1;
        out.add(mu, static_cast<double>(nu[j - 1]) * c);
    }
    return out;
}

MultiIndexPoly partial_derivative_multi(const MultiIndexPoly& f,
                                        const MultiIndex& nu) {
    if (static_cast<int>(nu.size()) != f.dim())
        throw std::invalid_argument("partial_derivative_multi: bad index");
    MultiIndexPoly out = f;
    for (int j = 0; j < f.dim(); ++j)
        for (int t = 0; t < nu[j]; ++t) out = partial_derivative(out, j + 1);
    return out;
}

GradientLayer gradient_layer(const MultiIndexPoly& f, int m) {
    if (m < 0) throw std::invalid_argument("gradient_layer: m must be >= 0");
    GradientLayer layer;
    layer.order = m;
    for (const MultiIndex& nu : multi_indices_of_degree(f.dim(), m))
        layer.parts.emplace(nu, partial_derivative_multi(f, nu));
    return layer;
}

double gradient_at_zero(const MultiIndexPoly& f, int m) {
    double s = 0.0;
    for (const auto& [nu, c] : f.terms()) {
        if (mi_degree(nu) != m) continue;
        double log_nu_fact = 0.0;
        for (int v : nu) log_nu_fact += log_factorial(v);
        s += std::exp(log_nu_fact) * std::abs(c);
    }
    return s;
}

LogReal gradient_norm(const MultiIndexPoly& f, int k, const SpaceParams& sp,
                      double tol) {
    if (k < 0) throw std::invalid_argument("gradient_norm: k must be >= 0");
    GradientLayer layer = gradient_layer(f, k);
    auto log_abs = [&](const std::vector<Complex>& w) {
        double s = 0.0;
        for (const auto& [nu, g] : layer.parts) s += std::abs(g.eval(w));
        return s == 0.0 ? -std::numeric_limits<double>::infinity()
                        : std::log(s);
    };
    return norm_pointwise(log_abs, sp, tol);
}

double lp_ratio(const MultiIndexPoly& f, int k, const SpaceParams& sp,
                double tol) {
    if (k < 1) throw std::invalid_argument("lp_ratio: k must be >= 1");
    sp.validate();
    double head = 0.0;
    for (int m = 0; m < k; ++m) head += gradient_at_zero(f, m);
    SpaceParams shifted = sp;
    shifted.rho = sp.rho - k * (2.0 * sp.ell - 1.0);
    LogReal grad = gradient_norm(f, k, shifted, tol);
    LogReal denom = norm_poly(f, sp, tol);
    if (denom.is_zero() || denom.log() < -600.0)
        throw std::domain_error("lp_ratio: ||f|| underflows");
    LogReal numer = LogReal::from(head) + grad;
    return std::exp(numer.log() - denom.log());
}

MultiIndexPoly sj_apply(const MultiIndexPoly& g, int j) {
    if (j < 1 || j > g.dim())
        throw std::invalid_argument("sj_apply: axis out of range");
    MultiIndexPoly out(g.dim());
    for (const auto& [nu, c] : g.terms()) {
        MultiIndex mu = nu;
        mu[j - 1] += 1;
        out.add(mu, c / static_cast<double>(mi_degree(nu) + 1));
    }
    return out;
}

double reconstruction_residual(const MultiIndexPoly& f) {
    MultiIndexPoly rec(f.dim());
    MultiIndex zero(f.dim(), 0);
    rec.set(zero, f.coeff(zero));
    for (int j = 1; j <= f.dim(); ++j) {
        MultiIndexPoly sj = sj_apply(partial_derivative(f, j), j);
        for (const auto& [nu, c] : sj.terms()) rec.add(nu, c);
    }
    double worst = 0.0;
    for (const auto& [nu, c] : f.terms())
        worst = std::max(worst, std::abs(rec.coeff(nu) - c));
    for (const auto& [nu, c] : rec.terms())
        worst = std::max(worst, std::abs(f.coeff(nu) - c));
    return worst;
}

}  // namespace fock
