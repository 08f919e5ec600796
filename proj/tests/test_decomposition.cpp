#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fock/bergman.hpp"
#include "fock/decomposition.hpp"
#include "fock/special.hpp"

using namespace fock;

TEST_CASE("c_{l,theta} matches its formula") {
    DecompParams dp{2.0, 1.0, 1.0, 3.0, 1};
    CHECK(dp.theta() == doctest::Approx(0.25));
    CHECK(dp.c_ltheta() ==
          doctest::Approx(std::pow(0.25 * 0.75, -0.25) / 2.0).epsilon(1e-14));
    DecompParams d1{1.0, 1.0, 1.0, 1.0, 1};
    CHECK(d1.c_ltheta() == doctest::Approx(1.0));
}

TEST_CASE("remainder vanishes identically at l=1") {
    for (double th : {0.3, 0.5, 0.8}) {
        for (Complex lam : {Complex{1.0, 2.0}, Complex{-4.0, 0.5}, Complex{20.0, -3.0}}) {
            CHECK(remainder_eval(1.0, th, lam).is_zero());
            CHECK(remainder_deriv(1.0, th, 3, lam).is_zero());
        }
    }
}

TEST_CASE("remainder at lambda=0 from constant terms") {
    for (double ell : {1.5, 2.0, 3.0}) {
        for (double th : {0.3, 0.5}) {
            double c = std::pow(th * (1.0 - th), (1.0 - ell) / (2.0 * ell)) / ell;
            double b2 = (ell + 1.0) / (2.0 * ell);
            double want = 1.0 / std::tgamma(1.0 / ell) -
                          c / (std::tgamma(b2) * std::tgamma(b2));
            Complex got = remainder_eval(ell, th, {0.0, 0.0}).value();
            CHECK(got.real() == doctest::Approx(want).epsilon(1e-10));
            CHECK(std::abs(got.imag()) < 1e-12);
        }
    }
}

TEST_CASE("remainder derivative matches finite differences (series regime)") {
    double ell = 2.0, th = 0.4, h = 1e-4;
    for (Complex lam : {Complex{1.1, 0.0}, Complex{0.5, -1.2}}) {
        Complex fd = (remainder_eval(ell, th, lam + h).value() -
                      remainder_eval(ell, th, lam - h).value()) /
                     (2.0 * h);
        Complex got = remainder_deriv(ell, th, 1, lam).value();
        CHECK(std::abs(got - fd) / std::abs(fd) < 1e-5);
    }
}

TEST_CASE("remainder envelope ratio bounded on a log grid") {
    // |R| against (1+|lambda|)^{(l-3)/2}(phi_theta + phi_{1-theta})
    for (double ell : {1.5, 2.0, 3.0}) {
        for (double th : {0.35, 0.5}) {
            double worst = -1e30;
            for (int i = 0; i <= 24; ++i) {
                double r = std::pow(10.0, -0.5 + 2.0 * i / 24.0);
                if (std::pow(r, ell) > 60.0) break;
                for (int j = 0; j < 8; ++j) {
                    Complex lam = r * cis(2.0 * kPi * j / 8.0 + 0.05);
                    ScaledComplex rv = remainder_eval(ell, th, lam);
                    if (rv.is_zero()) continue;
                    LogReal env =
                        LogReal((ell - 3.0) / 2.0 * std::log1p(r)) *
                        (phi_c(th, ell, lam) + phi_c(1.0 - th, ell, lam));
                    worst = std::max(worst, rv.log_mag() - env.log());
                }
            }
            CHECK(worst < std::log(20.0));
        }
    }
}

TEST_CASE("factor values: instantiation checks") {
    // H_{n-1}(0) = 1/Gamma((l+1)/(2l))
    for (auto [n, ell] : {std::pair{1, 2.0}, {2, 1.5}, {3, 3.0}}) {
        DecompParams dp{ell, 1.0, 1.0, 2.0, n};
        ScaledComplex h = factor_eval(FactorKind::H, n - 1, dp, {0.0, 0.0});
        double want = 1.0 / std::tgamma((ell + 1.0) / (2.0 * ell));
        CHECK(h.value().real() == doctest::Approx(want).epsilon(1e-11));
    }
    // l=1, n=1: G0 H0 is the full kernel gamma e^{gamma lambda}
    DecompParams d1{1.0, 1.3, 1.0, 2.0, 1};
    Complex lam{0.7, -0.4};
    Complex prod = (factor_eval(FactorKind::G, 0, d1, lam) *
                    factor_eval(FactorKind::H, 0, d1, lam))
                       .value();
    Complex want = 1.3 * std::exp(1.3 * lam);
    CHECK(std::abs(prod - want) / std::abs(want) < 1e-12);
    // R slot assignment: alpha >= beta puts R on the G side
    DecompParams dge{2.0, 1.0, 2.0, 1.0, 1};
    CHECK(factor_eval(FactorKind::H, 1, dge, lam).value() == Complex{1.0, 0.0});
    DecompParams dlt{2.0, 1.0, 1.0, 2.0, 1};
    CHECK(factor_eval(FactorKind::G, 1, dlt, lam).value() == Complex{1.0, 0.0});
}

TEST_CASE("decomposition identity: l=1 exact, boundary points") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    DecompParams d1{1.0, 1.0, 1.0, 2.0, 2};
    for (int t = 0; t < 20; ++t) {
        std::vector<Complex> z = {{u(rng), u(rng)}, {u(rng), u(rng)}};
        std::vector<Complex> w = {{u(rng), u(rng)}, {u(rng), u(rng)}};
        CHECK(identity_residual(d1, z, w) < 1e-12);
    }
    DecompParams d2{2.0, 1.0, 1.0, 1.0, 2};
    std::vector<Complex> zero = {{0.0, 0.0}, {0.0, 0.0}};
    std::vector<Complex> pt = {{0.9, -0.3}, {0.2, 1.1}};
    CHECK(identity_residual(d2, zero, pt) < 1e-10);
    CHECK(identity_residual(d2, pt, zero) < 1e-10);
}

TEST_CASE("decomposition identity across parameter sets (series regime)") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto [ell, n] :
         {std::pair{2.0, 1}, {2.0, 2}, {3.0, 1}, {1.5, 1}}) {
        for (auto [alpha, beta] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {3.0, 1.0}}) {
            DecompParams dp{ell, 1.0, alpha, beta, n};
            double worst = 0.0;
            for (int t = 0; t < 25; ++t) {
                std::vector<Complex> z(n), w(n);
                for (int j = 0; j < n; ++j) {
                    z[j] = {2.5 * u(rng), 2.5 * u(rng)};
                    w[j] = {2.5 * u(rng), 2.5 * u(rng)};
                }
                worst = std::max(worst, identity_residual(dp, z, w));
            }
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("decomposition identity across the asymptotic crossover") {
    // |z.wbar| pushed through and beyond the series/asymptotic switch.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    for (auto [ell, n] : {std::pair{2.0, 1}, {2.0, 2}, {1.5, 1}}) {
        DecompParams dp{ell, 1.0, 1.0, 2.0, n};
        double worst = 0.0;
        for (int t = 0; t < 60; ++t) {
            double target = 2.0 + 13.0 * t / 59.0;  // |lambda| up to 15
            double ph = uphi(rng);
            std::vector<Complex> z(n, {0.0, 0.0}), w(n, {0.0, 0.0});
            z[0] = std::sqrt(target) * cis(ph * 0.5);
            w[0] = std::sqrt(target) * cis(ph * 0.5 - ph);
            worst = std::max(worst, identity_residual(dp, z, w));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("theta default minimizes psi(theta) = theta^2/a + (1-theta)^2/b") {
    for (auto [alpha, beta] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {3.0, 0.5}}) {
        auto psi = [&](double th) {
            return th * th / alpha + (1.0 - th) * (1.0 - th) / beta;
        };
        double tstar = alpha / (alpha + beta);
        CHECK(psi(tstar) == doctest::Approx(1.0 / (alpha + beta)).epsilon(1e-13));
        for (int i = 1; i < 40; ++i) {
            double th = i / 40.0;
            CHECK(psi(th) >= psi(tstar) - 1e-13);
        }
    }
}

TEST_CASE("factor norms track their envelopes (l=2, n=1, p=2)") {
    DecompParams dp{2.0, 1.0, 1.0, 1.0, 1};
    std::vector<double> grid = {1.0, 2.0, 3.0, 4.0, 5.0};
    for (FactorKind kind : {FactorKind::G, FactorKind::H}) {
        RatioReport rep = factor_norm_report(kind, 0, dp, Exponent::finite(2.0),
                                             0.0, 0.0, grid, 1e-7);
        RatioStats st = rep.stats();
        CHECK(std::abs(st.slope_r2l) < 1e-3);
        CHECK(st.max - st.min < std::log(100.0));
    }
}

TEST_CASE("l=1 closed-form factor norm ratio is constant") {
    DecompParams dp{1.0, 1.0, 1.0, 1.0, 1};
    std::vector<double> grid = {0.5, 1.0, 2.0, 3.0};
    RatioReport rep = factor_norm_report(FactorKind::G, 0, dp,
                                         Exponent::finite(2.0), 0.0, 0.0, grid,
                                         1e-8);
    RatioStats st = rep.stats();
    CHECK(st.max - st.min < 1e-6);
}

TEST_CASE("combined norm product stays under the joint envelope") {
    DecompParams dp{2.0, 1.0, 1.0, 2.0, 1};
    std::vector<double> grid = {1.0, 3.0, 5.0};
    RatioReport rep = combined_norm_report(dp, Exponent::finite(2.0), 0.0, 0.0,
                                           grid, 1e-6);
    RatioStats st = rep.stats();
    CHECK(st.max - st.min < std::log(100.0));
    CHECK(std::abs(st.slope_r2l) < 5e-3);
}
