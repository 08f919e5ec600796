#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fock/bergman.hpp"
#include "fock/hankel.hpp"
#include "fock/quadrature.hpp"
#include "fock/special.hpp"

using namespace fock;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("zero symbol gives the zero matrix") {
    MultiIndexPoly b(1);
    HankelMatrix M = hankel_matrix(b, 1.0, 1.0, 0.0, 6);
    CHECK(M.mat.norm() == 0.0);
    CHECK(schatten_norm(M, 2.0) == 0.0);
    SchattenSymbolReport rep = schatten_vs_symbol(b, 1.0, 1.0, 0.0, 2.0, 6);
    CHECK(rep.degenerate);
    CHECK(rep.ratio == 1.0);
}

TEST_CASE("b = w^2 at l=1: explicit anti-diagonal and Schatten norms") {
    MultiIndexPoly b(1);
    b.set({2}, {1.0, 0.0});
    HankelMatrix M = hankel_matrix(b, 1.0, 1.0, 0.0, 4);
    // entries on mu+nu = 2: (mu+nu)!/sqrt(mu! nu!) = sqrt(2), 2, sqrt(2)
    CHECK(std::abs(M.mat(0, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(M.mat(1, 1)) == doctest::Approx(2.0));
    CHECK(std::abs(M.mat(2, 0)) == doctest::Approx(std::sqrt(2.0)));
    double off = 0.0;
    for (int r = 0; r < M.mat.rows(); ++r)
        for (int c = 0; c < M.mat.cols(); ++c)
            if (r + c != 2) off += std::abs(M.mat(r, c));
    CHECK(off == 0.0);
    CHECK(schatten_norm(M, kInf) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(schatten_norm(M, 1.0) ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("Hankel structure: normalized entries depend on mu+nu only") {
    MultiIndexPoly b(1);
    b.set({0}, {0.3, 0.1});
    b.set({1}, {-0.2, 0.5});
    b.set({3}, {1.0, -0.7});
    for (double ell : {1.0, 2.0}) {
        HankelMatrix M = hankel_matrix(b, ell, 1.3, 0.0, 8);
        std::map<int, Complex> seen;
        for (int r = 0; r < M.mat.rows(); ++r)
            for (int c = 0; c < M.mat.cols(); ++c) {
                if (M.mat(r, c) == Complex{0.0, 0.0}) continue;
                int d = mi_degree(M.basis[r]) + mi_degree(M.basis[c]);
                double lnorm =
                    0.5 * monomial_norm_sq_log(1, ell, 1.3, M.basis[r]) +
                    0.5 * monomial_norm_sq_log(1, ell, 1.3, M.basis[c]) -
                    monomial_norm_sq_log(1, ell, 1.3,
                                         {mi_degree(M.basis[r]) +
                                          mi_degree(M.basis[c])});
                Complex v = M.mat(r, c) * std::exp(lnorm);
                auto it = seen.find(d);
                if (it == seen.end())
                    seen[d] = v;
                else
                    CHECK(std::abs(v - it->second) < 1e-12 * std::abs(v));
            }
    }
}

TEST_CASE("rho-weighted entries match the direct-integral oracle") {
    // entry(nu,mu) should equal the F^2_{1,rho} component along e_nu of
    // conj(h_b(e_mu)), with every norm and projection integral computed
    // directly by radial quadrature instead of closed forms.
    MultiIndexPoly b(1);
    b.set({0}, {1.0, 0.0});
    b.set({1}, {0.4, -0.3});
    b.set({3}, {-0.6, 0.2});
    const double ell = 2.0, alpha = 1.0, rho = 1.0;
    HankelMatrix M = hankel_matrix(b, ell, alpha, rho, 5);

    auto radial = [&](double power, double rho_w, double a_w) {
        return integrate_semiline_log(
                   [&](double r) {
                       double e = -a_w * std::pow(r, 2.0 * ell);
                       if (e < -800.0)
                           return -std::numeric_limits<double>::infinity();
                       return power * std::log(r) +
                              2.0 * rho_w * std::log1p(r) + e;
                   },
                   1e-12)
            .log();
    };
    // ||w^d||^2_{F^2_{1,rho}} = 2 Integral r^{2d+1}(1+r)^{2rho}e^{-r^4} dr
    // (n=1, dV = Leb/pi); same with rho=0 for the plain alpha-norms.
    auto nsq_rho = [&](int d) {
        return std::log(2.0) + radial(2.0 * d + 1.0, rho, alpha);
    };
    auto nsq_a = [&](int d) {
        return std::log(2.0) + radial(2.0 * d + 1.0, 0.0, alpha);
    };
    for (auto [nu, mu] : {std::pair{0, 1}, {1, 0}, {0, 3}, {2, 1}, {1, 2}}) {
        Complex bc = b.coeff({nu + mu});
        Complex want = std::conj(bc) *
                       std::exp(nsq_a(nu + mu) + 0.5 * nsq_rho(nu) -
                                nsq_a(nu) - 0.5 * nsq_rho(mu));
        Complex got = M.mat(nu, mu);
        if (bc == Complex{0.0, 0.0}) {
            CHECK(std::abs(got) == 0.0);
        } else {
            CHECK(std::abs(got - want) / std::abs(want) < 1e-6);
        }
    }
}

TEST_CASE("Schatten norms are monotone decreasing in p") {
    MultiIndexPoly b(1);
    b.set({1}, {0.5, 0.0});
    b.set({2}, {1.0, 0.3});
    HankelMatrix M = hankel_matrix(b, 2.0, 1.0, 0.0, 10);
    double prev = 1e300;
    for (double p : {0.5, 1.0, 2.0, 4.0, 8.0, kInf}) {
        double v = schatten_norm(M, p);
        CHECK(v <= prev * (1.0 + 1e-12));
        prev = v;
    }
}

TEST_CASE("rank-one symbol: truncated K_{1/2}(., w0)") {
    // w0 = 0: a constant symbol has a single nonzero entry.
    RankOneReport r0 = rank_one_check({Complex{0.0, 0.0}}, 2.0, 0.0, 10);
    CHECK(r0.numerical_rank == 1);

    // l=1, n=1, w0=1: s1 = (1/2) e^{1/4} exactly in the limit.
    RankOneReport r1 = rank_one_check({Complex{1.0, 0.0}}, 1.0, 0.0, 30);
    CHECK(r1.numerical_rank == 1);
    CHECK(std::abs(r1.s1 - 0.5 * std::exp(0.25)) < 1e-4);
    CHECK(std::abs(r1.predicted_s1 - 0.5 * std::exp(0.25)) < 1e-12);

    // l=2, n=1, w0=1.2: rank one, s1 stable under N -> N+10, and matching
    // the kernel-norm prediction.
    RankOneReport r2 = rank_one_check({Complex{1.2, 0.0}}, 2.0, 0.0, 40);
    RankOneReport r3 = rank_one_check({Complex{1.2, 0.0}}, 2.0, 0.0, 50);
    CHECK(r2.numerical_rank == 1);
    CHECK(std::abs(r2.s1 - r3.s1) / r3.s1 < 1e-3);
    CHECK(std::abs(r3.s1 - r3.predicted_s1) / r3.predicted_s1 < 1e-4);
}

TEST_CASE("dilation covariance of Schatten norms (rho = 0)") {
    MultiIndexPoly b(1);
    b.set({0}, {0.2, 0.0});
    b.set({2}, {1.0, -0.5});
    b.set({4}, {0.0, 0.3});
    for (double ell : {1.0, 2.0}) {
        for (double alpha : {0.5, 2.0}) {
            HankelMatrix Ma = hankel_matrix(b, ell, alpha, 0.0, 12);
            HankelMatrix M1 =
                hankel_matrix(psi_alpha(b, alpha, ell), ell, 1.0, 0.0, 12);
            for (double p : {1.0, 2.0, kInf}) {
                double va = schatten_norm(Ma, p), v1 = schatten_norm(M1, p);
                CHECK(std::abs(va - v1) / v1 < 1e-6);
            }
        }
    }
}

TEST_CASE("Schatten vs symbol norm: monomial family band (n=1)") {
    for (double ell : {1.0, 2.0}) {
        for (double p : {1.0, 2.0, 4.0, kInf}) {
            double lo = 1e300, hi = 0.0;
            for (int j = 0; j <= 10; ++j) {
                MultiIndexPoly b(1);
                b.set({j}, {1.0, 0.0});
                SchattenSymbolReport rep =
                    schatten_vs_symbol(b, ell, 1.0, 0.0, p, 24);
                lo = std::min(lo, rep.ratio);
                hi = std::max(hi, rep.ratio);
            }
            CHECK(hi / lo <= 20.0);
        }
    }
}

TEST_CASE("Schatten vs symbol norm: truncated-kernel family is flat") {
    const double ell = 2.0;
    double lo = 1e300, hi = 0.0;
    for (double t : {0.0, 0.5, 1.0, 1.5}) {
        MultiIndexPoly b = kernel_truncation(0.5, 1, ell, {Complex{t, 0.0}}, 20);
        SchattenSymbolReport rep = schatten_vs_symbol(b, ell, 1.0, 0.0, 2.0, 30);
        lo = std::min(lo, rep.ratio);
        hi = std::max(hi, rep.ratio);
    }
    CHECK(hi / lo <= 20.0);
}

TEST_CASE("rho-independence of the Schatten/symbol ratio") {
    for (double ell : {1.0, 2.0}) {
        for (int j : {0, 2, 5}) {
            MultiIndexPoly b(1);
            b.set({j}, {1.0, 0.0});
            SchattenSymbolReport a =
                schatten_vs_symbol(b, ell, 1.0, 0.0, 2.0, 20);
            SchattenSymbolReport c =
                schatten_vs_symbol(b, ell, 1.0, 1.0, 2.0, 20);
            double f = a.ratio / c.ratio;
            CHECK(std::max(f, 1.0 / f) <= 10.0);
        }
    }
}

TEST_CASE("truncation stability of Schatten norms") {
    MultiIndexPoly b = kernel_truncation(0.5, 1, 1.0, {Complex{1.0, 0.5}}, 30);
    for (double p : {1.0, 2.0, kInf}) {
        double a = schatten_norm(hankel_matrix(b, 1.0, 1.0, 0.0, 30), p);
        double c = schatten_norm(hankel_matrix(b, 1.0, 1.0, 0.0, 40), p);
        CHECK(std::abs(a - c) / c < 0.005);
    }
}

TEST_CASE("representation formula: constants and closed forms") {
    MultiIndexPoly c1(1);
    c1.set({0}, {0.7, -0.2});
    CHECK(representation_residual(c1, {Complex{0.0, 0.0}}, 2.0, 20) < 1e-8);

    MultiIndexPoly w(1);
    w.set({1}, {1.0, 0.0});
    CHECK(representation_residual(w, {Complex{0.7, 0.0}}, 1.0, 30) < 1e-8);
}

TEST_CASE("representation formula: degree-4 symbols across (l, n)") {
    for (auto [ell, n] :
         {std::pair{1.0, 1}, {2.0, 1}, {1.0, 2}, {2.0, 2}}) {
        MultiIndexPoly b(n);
        for (const MultiIndex& nu : multi_indices_up_to(n, 4))
            b.set(nu, {0.3 + 0.1 * mi_degree(nu), 0.2 - 0.05 * nu[0]});
        std::vector<Complex> z(n);
        for (int j = 0; j < n; ++j) z[j] = Complex{0.5 + 0.2 * j, -0.3};
        CHECK(representation_residual(b, z, ell, n == 1 ? 40 : 16) < 1e-6);
    }
}

TEST_CASE("representation residual decreases in N") {
    MultiIndexPoly b(1);
    b.set({0}, {1.0, 0.0});
    b.set({2}, {0.5, 0.3});
    std::vector<Complex> z = {Complex{0.9, 0.4}};
    double prev = 1e300;
    for (int N : {6, 10, 14, 18, 24}) {
        double r = representation_residual(b, z, 2.0, N);
        CHECK(r <= prev * (1.0 + 1e-9));
        prev = r;
    }
    CHECK(prev < 1e-8);
}
