#include "fock/core.hpp"

#include <json.hpp>

namespace fock {

std::vector<MultiIndex> multi_indices_of_degree(int n, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    // Recursive enumeration in lexicographic order at fixed total degree.
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int d) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= d; ++k) {
        auto layer = multi_indices_of_degree(n, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

Complex MultiIndexPoly::eval(const std::vector<Complex>& z) const {
    if (static_cast<int>(z.size()) != n_)
        throw std::invalid_argument("MultiIndexPoly::eval: wrong dimension");
    Complex s{0.0, 0.0};
    for (const auto& [nu, c] : terms_) {
        Complex mono{1.0, 0.0};
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < nu[j]; ++k) mono *= z[j];
        s += c * mono;
    }
    return s;
}

std::string MultiIndexPoly::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["terms"] = nlohmann::json::array();
    for (const auto& [nu, c] : terms_) {
        nlohmann::json t;
        t["nu"] = nu;
        t["re"] = c.real();
        t["im"] = c.imag();
        j["terms"].push_back(t);
    }
    return j.dump();
}

MultiIndexPoly MultiIndexPoly::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MultiIndexPoly p(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex nu = t.at("nu").get<std::vector<int>>();
        p.add(nu, {t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return p;
}

double monomial_norm_sq_log(int n, double ell, double alpha,
                            const MultiIndex& nu) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("monomial_norm_sq: alpha must be > 0");
    if (static_cast<int>(nu.size()) != n)
        throw std::invalid_argument("monomial_norm_sq: wrong index dimension");
    int d = mi_degree(nu);
    double log_nu_fact = 0.0;
    for (int c : nu) log_nu_fact += log_factorial(c);
    return -((d + n) / ell) * std::log(alpha) - std::log(ell) +
           log_factorial(n) + log_nu_fact +
           log_gamma_pos((d + n) / ell) - log_factorial(n - 1 + d);
}

Complex pairing_poly(const MultiIndexPoly& f, const MultiIndexPoly& g,
                     double ell, double alpha) {
    if (f.dim() != g.dim())
        throw std::invalid_argument("pairing_poly: dimension mismatch");
    ScaledComplex acc = ScaledComplex::zero();
    for (const auto& [nu, fc] : f.terms()) {
        Complex gc = g.coeff(nu);
        if (gc == Complex{0.0, 0.0}) continue;
        double lw = monomial_norm_sq_log(f.dim(), ell, alpha, nu);
        acc += ScaledComplex::from(fc * std::conj(gc)) * ScaledComplex(lw, 0.0);
    }
    return acc.value();
}

double dilation_pairing_check(const MultiIndexPoly& f, const MultiIndexPoly& g,
                              double ell, double alpha, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("dilation_pairing_check: delta must be > 0");
    Complex lhs = pairing_poly(f, g, ell, alpha);
    MultiIndexPoly gd(g.dim());
    for (const auto& [nu, c] : g.terms())
        gd.set(nu, c * std::pow(delta * delta, mi_degree(nu)));
    Complex rhs = std::pow(delta, 2.0 * f.dim()) *
                  pairing_poly(f, gd, ell, std::pow(delta, 2.0 * ell) * alpha);
    return std::abs(lhs - rhs);
}

}  // namespace fock
