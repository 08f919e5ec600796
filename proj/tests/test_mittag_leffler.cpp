#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fock/mittag_leffler.hpp"
#include "fock/special.hpp"

using namespace fock;

namespace {

// Independent oracle: straight power series with compensated summation in
// long double, 400 terms. Valid when the terms do not cancel violently.
std::complex<long double> oracle_series(double a, double b, int m,
                                        std::complex<long double> lam) {
    std::complex<long double> sum = 0, comp = 0, pw = 1;
    for (int k = 0; k < 400; ++k) {
        long double lc = std::lgamma((long double)(k + m + 1)) -
                         std::lgamma((long double)(k + 1)) -
                         std::lgamma((long double)(a * (k + m) + b));
        std::complex<long double> term = pw * std::exp(lc);
        std::complex<long double> y = term - comp;
        std::complex<long double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        pw *= lam;
    }
    return sum;
}

double rel_err(ScaledComplex got, Complex want) {
    Complex g = got.value();
    return std::abs(g - want) / std::abs(want);
}

}  // namespace

TEST_CASE("a=1,b=1 reduces to exp, all derivative orders") {
    Complex lam{1.0, 2.0};
    Complex want = std::exp(lam);  // -1.1312... + 2.4717...i
    CHECK(rel_err(ml_eval({1.0, 1.0, 0}, lam), want) < 1e-12);
    CHECK(rel_err(ml_deriv({1.0, 1.0, 3}, lam), want) < 1e-12);
    CHECK(std::abs(want.real() - (-1.1312)) < 1e-3);
    CHECK(std::abs(want.imag() - 2.4717) < 1e-3);
}

TEST_CASE("a=1/2,b=1 matches erfc identity on the positive axis") {
    // E_{1/2,1}(x) = e^{x^2} erfc(-x)
    for (double x : {0.3, 1.0, 2.0, 3.7}) {
        double want_log = x * x + std::log(std::erfc(-x));
        ScaledComplex got = ml_eval({0.5, 1.0, 0}, {x, 0.0});
        CHECK(std::abs(got.log_mag() - want_log) < 1e-10);
        CHECK(std::abs(got.phase()) < 1e-12);
    }
}

TEST_CASE("series agrees with independent long-double oracle") {
    for (auto [a, b] : {std::pair{0.5, 0.75}, {1.0 / 3, 1.0 / 3}, {0.7, 1.0}}) {
        for (int m : {0, 1, 2}) {
            Complex lam{1.3, -0.9};
            auto want =
                oracle_series(a, b, m, {lam.real(), lam.imag()});
            ScaledComplex got = ml_deriv({a, b, m}, lam);
            CHECK(rel_err(got, {(double)want.real(), (double)want.imag()}) < 1e-11);
        }
    }
}

TEST_CASE("heavy cancellation on the negative axis (high-precision fallback)") {
    // E_{1/2,1}(-5) = e^{25} erfc(5): terms reach ~e^{25} but the sum is ~0.11.
    double want = std::exp(25.0) * std::erfc(5.0);
    ScaledComplex got = ml_eval({0.5, 1.0, 0}, {-5.0, 0.0});
    CHECK(rel_err(got, {want, 0.0}) < 1e-9);
}

TEST_CASE("derivative matches finite differences of the base function") {
    MLParams base{0.5, 0.75, 0};
    MLParams d2{0.5, 0.75, 2};
    double x = 1.1, h = 1e-3;
    auto f = [&](double t) { return ml_eval(base, {t, 0.0}).value().real(); };
    // Fourth-order central second difference.
    double fd = (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
                 f(x + 2 * h)) /
                (12 * h * h);
    double got = ml_deriv(d2, {x, 0.0}).value().real();
    CHECK(std::abs(got - fd) / std::abs(fd) < 1e-6);
}

TEST_CASE("positive on the nonnegative axis") {
    for (double a : {0.4, 0.5, 1.0}) {
        for (double x : {0.0, 0.5, 2.0, 10.0, 40.0}) {
            ScaledComplex v = ml_eval({a, 0.8, 0}, {x, 0.0});
            CHECK(std::abs(v.phase()) < 1e-12);
            CHECK(!v.is_zero());
        }
    }
}

TEST_CASE("series and asymptotic branches agree across the crossover") {
    for (auto [a, b] : {std::pair{1.0, 1.0}, {0.5, 0.5}, {0.5, 0.75},
                        {1.0 / 3, 1.0 / 3}}) {
        for (int m : {0, 1, 2}) {
            double sector = a * (m == 0 ? 7.0 * kPi / 8 : 3.0 * kPi / 4);
            for (int j = 0; j < 16; ++j) {
                double th = sector * (2.0 * j / 15.0 - 1.0) * 0.98;
                for (double r1a : {21.0, 25.0, 29.0}) {
                    double r = std::pow(r1a, a);
                    Complex lam = r * cis(th);
                    ScaledComplex s = ml_detail::series({a, b, m}, lam, 1e-14);
                    ScaledComplex as = ml_detail::asymptotic({a, b, m}, lam, 1e-14);
                    Complex diff = s.value() - as.value();
                    double scale =
                        std::max({std::abs(s.value()), std::abs(as.value()), 1.0});
                    CHECK(std::abs(diff) / scale < 1e-6);
                }
            }
        }
    }
}

TEST_CASE("growth stays under the stated envelope") {
    // For E^{(m)}_{1/l,b} with b in (0,1], l >= 1.
    for (double ell : {1.0, 2.0, 3.0}) {
        double a = 1.0 / ell, b = 1.0 / ell;
        for (int m : {0, 1}) {
            for (double r : {2.0, 8.0, 40.0, 120.0}) {
                for (double frac : {0.0, 0.4, 0.9, 1.5}) {
                    double th = frac * kPi / (2 * ell);
                    if (th > kPi) continue;
                    Complex lam = r * cis(th);
                    ScaledComplex v = ml_deriv({a, b, m}, lam);
                    LogReal env = ml_envelope(ell, b, m, lam);
                    if (v.is_zero()) continue;
                    // Allow a generous constant; the point is the exponent.
                    CHECK(v.log_mag() < env.log() + 12.0);
                }
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ml_eval({1.5, 1.0, 0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ml_eval({0.5, -1.0, 0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ml_eval({0.5, 1.0, 2}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ml_envelope(2.0, 1.5, 0, {1.0, 0.0}), std::invalid_argument);
}
