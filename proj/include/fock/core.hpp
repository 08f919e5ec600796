#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fock/phi.hpp"
#include "fock/scaled.hpp"
#include "fock/special.hpp"

namespace fock {

/// Exponent p of the space, with infinity as a tagged value rather than a
/// float so dispatch on the sup-norm path is explicit.
struct Exponent {
    double p = 2.0;
    bool inf = false;

    static Exponent infinity() { return {0.0, true}; }
    static Exponent finite(double p) { return {p, false}; }

    bool is_inf() const { return inf; }
    double val() const {
        if (inf) throw std::logic_error("Exponent: p is infinite");
        return p;
    }
    /// Conjugate exponent p' = p/(p-1), with 1 <-> infinity.
    Exponent conjugate() const {
        if (inf) return finite(1.0);
        if (p == 1.0) return infinity();
        return finite(p / (p - 1.0));
    }
    void validate() const {
        if (!inf && !(p >= 1.0))
            throw std::invalid_argument("Exponent: p must lie in [1,inf]");
    }
};

struct SpaceParams {
    int n = 1;
    double ell = 1.0;
    double alpha = 1.0;
    double rho = 0.0;
    Exponent p = Exponent::finite(2.0);

    void validate(bool require_positive_alpha = true) const {
        if (n < 1) throw std::invalid_argument("SpaceParams: n must be >= 1");
        if (!(ell >= 1.0)) throw std::invalid_argument("SpaceParams: ell must be >= 1");
        if (require_positive_alpha ? !(alpha > 0.0) : !(alpha >= 0.0))
            throw std::invalid_argument("SpaceParams: bad alpha");
        p.validate();
    }
};

using MultiIndex = std::vector<int>;

inline int mi_degree(const MultiIndex& nu) {
    int s = 0;
    for (int c : nu) s += c;
    return s;
}

/// Graded lexicographic order: first by total degree, then lexicographically.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int da = mi_degree(a), db = mi_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// All multi-indices in dimension n of total degree exactly d, graded-lex.
std::vector<MultiIndex> multi_indices_of_degree(int n, int d);
/// All multi-indices of degree 0..d, graded-lex.
std::vector<MultiIndex> multi_indices_up_to(int n, int d);

/// A holomorphic polynomial (or truncated entire function) as a finite map
/// from multi-indices to coefficients; zero coefficients are not stored.
class MultiIndexPoly {
public:
    explicit MultiIndexPoly(int n = 1) : n_(n) {}

    int dim() const { return n_; }
    const std::map<MultiIndex, Complex, GradedLexLess>& terms() const {
        return terms_;
    }
    Complex coeff(const MultiIndex& nu) const {
        auto it = terms_.find(nu);
        return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
    }
    void set(const MultiIndex& nu, Complex c) {
        if (static_cast<int>(nu.size()) != n_)
            throw std::invalid_argument("MultiIndexPoly: wrong index dimension");
        if (c == Complex{0.0, 0.0})
            terms_.erase(nu);
        else
            terms_[nu] = c;
    }
    void add(const MultiIndex& nu, Complex c) { set(nu, coeff(nu) + c); }

    int degree() const {
        int d = 0;
        for (const auto& [nu, c] : terms_) d = std::max(d, mi_degree(nu));
        return d;
    }

    Complex eval(const std::vector<Complex>& z) const;

    std::string to_json() const;
    static MultiIndexPoly from_json(const std::string& text);

private:
    int n_;
    std::map<MultiIndex, Complex, GradedLexLess> terms_;
};

/// (1+|z|)^rho e^{-(alpha/2)|z|^{2l}}, via its log.
inline double weight_log(const SpaceParams& sp, double abs_z) {
    return sp.rho * std::log1p(abs_z) -
           0.5 * sp.alpha * std::pow(abs_z, 2.0 * sp.ell);
}
inline LogReal weight(const SpaceParams& sp, double abs_z) {
    return LogReal(weight_log(sp, abs_z));
}

/// log of ||w^nu||^2 in F^2_alpha:
/// (alpha^{-(|nu|+n)/l}/l) n! nu! Gamma((|nu|+n)/l) / (n-1+|nu|)!
double monomial_norm_sq_log(int n, double ell, double alpha, const MultiIndex& nu);
inline double monomial_norm_sq(int n, double ell, double alpha,
                               const MultiIndex& nu) {
    return std::exp(monomial_norm_sq_log(n, ell, alpha, nu));
}

/// <f,g>_alpha = integral of f conj(g) e^{-alpha|z|^{2l}} dV, evaluated
/// exactly through monomial orthogonality.
Complex pairing_poly(const MultiIndexPoly& f, const MultiIndexPoly& g,
                     double ell, double alpha);

/// |<f,g>_alpha - delta^{2n} <f, g(delta^2 .)>_{delta^{2l} alpha}|.
double dilation_pairing_check(const MultiIndexPoly& f, const MultiIndexPoly& g,
                              double ell, double alpha, double delta);

}  // namespace fock
