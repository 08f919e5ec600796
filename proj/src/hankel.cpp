#include "fock/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/SVD>

#include "fock/bergman.hpp"
#include "fock/special.hpp"

namespace fock {

namespace {

// log ||w^nu||^2 in F^2_{alpha,rho}; rho = 0 reduces to the closed form, and
// the radial integral is shared across all nu of the same total degree.
class RhoNormTable {
public:
    RhoNormTable(int n, double ell, double alpha, double rho)
        : n_(n), ell_(ell), alpha_(alpha), rho_(rho) {}

    double log_sq(const MultiIndex& nu) {
        if (rho_ == 0.0) return monomial_norm_sq_log(n_, ell_, alpha_, nu);
        int d = mi_degree(nu);
        auto it = radial_.find(d);
        if (it == radial_.end()) {
            LogReal r = integrate_semiline_log(
                [&](double rr) {
                    double e = -alpha_ * std::pow(rr, 2.0 * ell_);
                    if (e < -800.0)
                        return -std::numeric_limits<double>::infinity();
                    return (2.0 * d + 2.0 * n_ - 1.0) * std::log(rr) +
                           2.0 * rho_ * std::log1p(rr) + e;
                },
                1e-11);
            it = radial_.emplace(d, r.log()).first;
        }
        double log_nu_fact = 0.0;
        for (int v : nu) log_nu_fact += log_factorial(v);
        return std::log(2.0) + log_factorial(n_) + log_nu_fact -
               log_factorial(n_ - 1 + d) + it->second;
    }

private:
    int n_;
    double ell_, alpha_, rho_;
    std::map<int, double> radial_;
};

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex s(a.size());
    for (size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
    return s;
}

}  // namespace

const std::vector<double>& HankelMatrix::singular_values() const {
    if (svals_.empty() && mat.rows() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
        const auto& s = svd.singularValues();
        svals_.assign(s.data(), s.data() + s.size());
    }
    return svals_;
}

HankelMatrix hankel_matrix(const MultiIndexPoly& b, double ell, double alpha,
                           double rho, int N) {
    if (!(alpha > 0.0) || !(ell >= 1.0) || N < 0)
        throw std::invalid_argument("hankel_matrix: bad parameters");
    HankelMatrix M;
    M.N = N;
    M.n = b.dim();
    M.ell = ell;
    M.alpha = alpha;
    M.rho = rho;
    M.basis = multi_indices_up_to(M.n, N);
    if (b.degree() > N - 2)
        M.flags.push_back("truncation_margin: N < deg(b) + 2");

    RhoNormTable rn(M.n, ell, alpha, rho);
    const int dim = static_cast<int>(M.basis.size());
    std::vector<double> log_sq_a(dim), log_sq_rho(dim);
    for (int i = 0; i < dim; ++i) {
        log_sq_a[i] = monomial_norm_sq_log(M.n, ell, alpha, M.basis[i]);
        log_sq_rho[i] = rn.log_sq(M.basis[i]);
    }
    M.mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            Complex bc = b.coeff(mi_add(M.basis[r], M.basis[c]));
            if (bc == Complex{0.0, 0.0}) continue;
            double lsum =
                monomial_norm_sq_log(M.n, ell, alpha,
                                     mi_add(M.basis[r], M.basis[c])) +
                0.5 * log_sq_rho[r] - log_sq_a[r] - 0.5 * log_sq_rho[c];
            M.mat(r, c) = std::conj(bc) * std::exp(lsum);
        }
    }
    return M;
}

MultiIndexPoly hankel_apply_conj(const MultiIndexPoly& b,
                                 const MultiIndexPoly& g, double ell,
                                 double alpha) {
    if (b.dim() != g.dim())
        throw std::invalid_argument("hankel_apply_conj: dimension mismatch");
    const int n = b.dim();
    MultiIndexPoly out(n);
    for (const auto& [tau, bc] : b.terms()) {
        // kappa runs over all componentwise splits tau = mu + kappa.
        std::vector<MultiIndex> kappas = {MultiIndex(n, 0)};
        for (int j = 0; j < n; ++j) {
            std::vector<MultiIndex> next;
            for (const MultiIndex& k : kappas)
                for (int v = 0; v <= tau[j]; ++v) {
                    MultiIndex kk = k;
                    kk[j] = v;
                    next.push_back(kk);
                }
            kappas = std::move(next);
        }
        double ltau = monomial_norm_sq_log(n, ell, alpha, tau);
        for (const MultiIndex& kappa : kappas) {
            MultiIndex mu(n);
            for (int j = 0; j < n; ++j) mu[j] = tau[j] - kappa[j];
            Complex gm = g.coeff(mu);
            if (gm == Complex{0.0, 0.0}) continue;
            double lk = monomial_norm_sq_log(n, ell, alpha, kappa);
            out.add(kappa, std::conj(gm) * bc * std::exp(ltau - lk));
        }
    }
    return out;
}

double schatten_norm(const HankelMatrix& M, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be > 0");
    const std::vector<double>& s = M.singular_values();
    if (s.empty()) return 0.0;
    if (std::isinf(p)) return s.front();
    double sum = 0.0;
    for (double v : s) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
}

MultiIndexPoly psi_alpha(const MultiIndexPoly& f, double alpha, double ell) {
    MultiIndexPoly out(f.dim());
    for (const auto& [nu, c] : f.terms())
        out.set(nu, c * std::pow(alpha, -mi_degree(nu) / (2.0 * ell)));
    return out;
}

RankOneReport rank_one_check(const std::vector<Complex>& w0, double ell,
                             double rho, int N) {
    const int n = static_cast<int>(w0.size());
    MultiIndexPoly b = kernel_truncation(0.5, n, ell, w0, N);
    HankelMatrix M = hankel_matrix(b, ell, 1.0, rho, N);
    const std::vector<double>& s = M.singular_values();
    RankOneReport rep;
    rep.s1 = s.empty() ? 0.0 : s.front();
    for (double v : s)
        if (v > 1e-8 * rep.s1 && rep.s1 > 0.0) ++rep.numerical_rank;
    std::vector<Complex> u(w0);
    for (auto& v : u) v *= std::pow(2.0, -1.0 / ell);
    ScaledComplex kuu = kernel_eval(1.0, n, ell, u, u);
    rep.predicted_s1 =
        std::exp(-(n / ell) * std::log(2.0) + kuu.log_mag());
    return rep;
}

SchattenSymbolReport schatten_vs_symbol(const MultiIndexPoly& b, double ell,
                                        double alpha, double rho, double p,
                                        int N) {
    SchattenSymbolReport rep;
    if (b.terms().empty()) {
        rep.degenerate = true;
        return rep;
    }
    HankelMatrix M = hankel_matrix(b, ell, alpha, rho, N);
    rep.schatten = schatten_norm(M, p);
    const int n = b.dim();
    double rho_sym = std::isinf(p) ? 0.0 : 2.0 * n * (ell - 1.0) / p;
    SpaceParams sp{n, ell, alpha / 2.0, rho_sym,
                   std::isinf(p) ? Exponent::infinity() : Exponent::finite(p)};
    rep.symbol_norm = std::exp(norm_poly(b, sp).log());
    rep.ratio = rep.schatten / rep.symbol_norm;
    return rep;
}

namespace {

// w -> sum_j c_j (w . conj(z))^j as a coefficient polynomial.
MultiIndexPoly slice_to_poly(const std::vector<double>& coeffs,
                             const std::vector<Complex>& z) {
    const int n = static_cast<int>(z.size());
    MultiIndexPoly out(n);
    for (int d = 0; d < static_cast<int>(coeffs.size()); ++d) {
        if (coeffs[d] == 0.0) continue;
        for (const MultiIndex& nu : multi_indices_of_degree(n, d)) {
            double lmult = log_factorial(d);
            Complex zc{1.0, 0.0};
            for (int j = 0; j < n; ++j) {
                lmult -= log_factorial(nu[j]);
                zc *= std::pow(std::conj(z[j]), nu[j]);
            }
            out.add(nu, coeffs[d] * std::exp(lmult) * zc);
        }
    }
    return out;
}

}  // namespace

double representation_residual(const MultiIndexPoly& b,
                               const std::vector<Complex>& z, double ell,
                               int N) {
    const int n = b.dim();
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument(
            "representation_residual: dimension mismatch");
    DecompParams dp{ell, 1.0, 1.0, 1.0, n};
    Complex rep{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        MultiIndexPoly gk =
            slice_to_poly(factor_taylor(FactorKind::G, k, dp, N), z);
        MultiIndexPoly hk =
            slice_to_poly(factor_taylor(FactorKind::H, k, dp, N), z);
        MultiIndexPoly u = hankel_apply_conj(b, gk, ell, 1.0);
        rep += pairing_poly(hk, u, ell, 1.0);
    }
    Complex want = std::conj(b.eval(z));
    double aw = std::abs(want);
    if (aw == 0.0) return std::abs(rep);
    return std::abs(rep - want) / aw;
}

}  // namespace fock
