#include "fock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace fock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp accumulator.
class LogSum {
public:
    void add(double lg) {
        if (std::isinf(lg) && lg < 0) return;
        if (lg > max_) {
            sum_ = sum_ * std::exp(max_ - lg) + 1.0;
            max_ = lg;
        } else {
            sum_ += std::exp(lg - max_);
        }
    }
    double log() const {
        if (sum_ == 0.0) return kNegInf;
        return max_ + std::log(sum_);
    }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

// One trapezoid level of the double-exponential transform r=exp((pi/2)sinh t).
// Successive levels halve h and share nodes, so evaluations are cached by the
// node index at the finest level.
constexpr double kDeHMin = 0.0078125 / 2;

double de_level_log(const std::function<double(double)>& flog, double h,
                    std::map<long long, double>& cache) {
    LogSum acc;
    int n = static_cast<int>(std::ceil(6.0 / h));
    long long stride = std::llround(h / kDeHMin);
    for (int k = -n; k <= n; ++k) {
        long long key = k * stride;
        auto it = cache.find(key);
        double g;
        if (it != cache.end()) {
            g = it->second;
        } else {
            double t = k * h;
            double lr = 0.5 * kPi * std::sinh(t);
            if (lr > 300.0) {
                g = kNegInf;  // integrands here always decay by then
            } else {
                double r = std::exp(lr);
                g = flog(r) + lr + std::log(0.5 * kPi * std::cosh(t));
            }
            cache.emplace(key, g);
        }
        acc.add(g);
    }
    return acc.log() + std::log(h);
}

bool log_close(double a, double b, double tol) {
    if (std::isinf(a) && std::isinf(b)) return true;
    return std::abs(a - b) < tol;  // |log ratio| < tol  ~ relative tol
}

// Golden-section maximum of a unimodal function on [a,b].
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double xtol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

LogReal integrate_semiline_log(const std::function<double(double)>& flog,
                               double tol) {
    std::map<long long, double> cache;
    double prev = de_level_log(flog, 0.5, cache);
    for (double h = 0.25; h >= kDeHMin; h *= 0.5) {
        double cur = de_level_log(flog, h, cache);
        if (log_close(prev, cur, tol)) return LogReal(cur);
        prev = cur;
    }
    return LogReal(prev);  // best effort at the finest level
}

LogReal integrate_interval_log(const std::function<double(double)>& flog,
                               double a, double b, double tol) {
    auto level = [&](double h) {
        LogSum acc;
        int n = static_cast<int>(std::ceil(4.0 / h));
        for (int k = -n; k <= n; ++k) {
            double t = k * h;
            double u = 0.5 * kPi * std::sinh(t);
            double x = 0.5 * (a + b) + 0.5 * (b - a) * std::tanh(u);
            if (x <= a || x >= b) continue;
            double jac = std::log(0.5 * (b - a)) +
                         std::log(0.5 * kPi * std::cosh(t)) -
                         2.0 * std::log(std::cosh(u));
            acc.add(flog(x) + jac);
        }
        return acc.log() + std::log(h);
    };
    double prev = level(0.5);
    for (double h = 0.25; h >= 0.00390625; h *= 0.5) {
        double cur = level(h);
        if (log_close(prev, cur, tol)) return LogReal(cur);
        prev = cur;
    }
    return LogReal(prev);
}

LogReal angular_mean_log(const std::function<double(double)>& flog, double tol,
                         int n0) {
    std::vector<double> vals(n0);
    for (int k = 0; k < n0; ++k) vals[k] = flog(2.0 * kPi * k / n0);
    auto mean = [&]() {
        LogSum acc;
        for (double v : vals) acc.add(v);
        return acc.log() - std::log(static_cast<double>(vals.size()));
    };
    double prev = mean();
    while (static_cast<int>(vals.size()) < 4096) {
        int n = 2 * static_cast<int>(vals.size());
        std::vector<double> next(n);
        for (int k = 0; k < n; ++k)
            next[k] = (k % 2 == 0) ? vals[k / 2] : flog(2.0 * kPi * k / n);
        vals = std::move(next);
        double cur = mean();
        if (log_close(prev, cur, tol)) return LogReal(cur);
        prev = cur;
    }
    return LogReal(prev);
}

ScaledComplex integrate_c1(
    const std::function<ScaledComplex(double, double)>& g, double tol,
    int n_angular) {
    auto radial = [&](double phi, double h) {
        ScaledComplex acc = ScaledComplex::zero();
        int n = static_cast<int>(std::ceil(6.0 / h));
        for (int k = -n; k <= n; ++k) {
            double t = k * h;
            double lr = 0.5 * kPi * std::sinh(t);
            if (lr > 300.0) continue;
            double r = std::exp(lr);
            // extra factor r from the polar Jacobian (dV = Leb/pi at n=1)
            double jac = 2.0 * lr + std::log(0.5 * kPi * std::cosh(t));
            acc += g(r, phi) * ScaledComplex(jac, 0.0);
        }
        return acc * ScaledComplex(std::log(h), 0.0);
    };
    auto full = [&](double h) {
        ScaledComplex acc = ScaledComplex::zero();
        for (int k = 0; k < n_angular; ++k)
            acc += radial(2.0 * kPi * k / n_angular, h);
        // mean over phi times 2, from (1/pi) * (2pi/n) * sum
        return acc * (2.0 / n_angular);
    };
    ScaledComplex prev = full(0.25);
    for (double h = 0.125; h >= 0.015625; h *= 0.5) {
        ScaledComplex cur = full(h);
        ScaledComplex diff = prev - cur;
        if (cur.is_zero() ? diff.is_zero()
                          : diff.log_mag() - cur.log_mag() < std::log(tol))
            return cur;
        prev = cur;
    }
    return prev;
}

namespace {

// log W_n(u): the exact weight picked up by integrating out v' = (v_2..v_n).
double slice_weight_log(const SpaceParams& sp, double pval, double u) {
    double rp = sp.rho * pval;
    double ap2 = 0.5 * sp.alpha * pval;
    if (sp.n == 1)
        return rp * std::log1p(u) - ap2 * std::pow(u, 2.0 * sp.ell);
    double log_cn = std::log(2.0) + (sp.n - 1) * std::log(kPi) -
                    log_factorial(sp.n - 2);
    LogReal inner = integrate_semiline_log(
        [&](double s) {
            double t2 = u * u + s * s;
            double e = -ap2 * std::pow(t2, sp.ell);
            if (e < -800.0) return kNegInf;
            return rp * std::log1p(std::sqrt(t2)) + e +
                   (2.0 * sp.n - 3.0) * std::log(s);
        },
        1e-11);
    return log_cn + inner.log();
}

// log of max over t >= u of (1+t)^rho e^{-(alpha/2) t^{2l}}.
double sup_weight_log(const SpaceParams& sp, double u) {
    auto h = [&](double t) {
        return sp.rho * std::log1p(t) -
               0.5 * sp.alpha * std::pow(t, 2.0 * sp.ell);
    };
    if (sp.rho <= 0.0) return h(u);
    // Unimodal with an interior max; bracket generously.
    double hi = u + std::pow(2.0 * sp.rho / sp.alpha + 1.0, 1.0 / sp.ell) + 10.0;
    return std::max(h(u), golden_max(h, u, hi, 1e-10 * (1.0 + u)));
}

LogReal norm_slice_sup(const SliceFunction& f, const SpaceParams& sp) {
    auto val = [&](double u, double phi) {
        ScaledComplex v = f.F(f.abs_z * u * cis(phi));
        if (v.is_zero()) return kNegInf;
        return v.log_mag() + sup_weight_log(sp, u);
    };
    const int nphi = 96;
    double best = kNegInf, bu = 0.0, bphi = 0.0;
    std::vector<double> us = {0.0};
    for (int i = 0; i <= 240; ++i)
        us.push_back(std::pow(10.0, -3.0 + 5.0 * i / 240.0));
    for (double u : us)
        for (int k = 0; k < nphi; ++k) {
            double phi = 2.0 * kPi * k / nphi;
            double v = val(u, phi);
            if (v > best) { best = v; bu = u; bphi = phi; }
        }
    double lo = std::max(0.0, bu * 0.5), hi = bu * 2.0 + 1e-3;
    best = std::max(best, golden_max([&](double u) { return val(u, bphi); },
                                     lo, hi, 1e-10 * (1.0 + bu)));
    // refine the angle near the winner as well
    best = std::max(best,
                    golden_max([&](double phi) { return val(bu, phi); },
                               bphi - 0.2, bphi + 0.2, 1e-10));
    return LogReal(best);
}

}  // namespace

LogReal norm_slice(const SliceFunction& f, const SpaceParams& sp, double tol) {
    sp.validate();
    if (sp.p.is_inf()) return norm_slice_sup(f, sp);
    const double pval = sp.p.val();
    auto outer = [&](double u) {
        double wn = slice_weight_log(sp, pval, u);
        if (wn < -900.0) return kNegInf;
        LogReal a = angular_mean_log(
            [&](double phi) {
                ScaledComplex v = f.F(f.abs_z * u * cis(phi));
                return v.is_zero() ? kNegInf : pval * v.log_mag();
            },
            tol * 0.1);
        return std::log(u) + wn + a.log();
    };
    LogReal integral = integrate_semiline_log(outer, tol * 0.5);
    // norm^p = (n!/pi^n) * 2pi * integral
    double lg = log_factorial(sp.n) - sp.n * std::log(kPi) +
                std::log(2.0 * kPi) + integral.log();
    return LogReal(lg / pval);
}

namespace {

LogReal norm_poly_exact_p2(const MultiIndexPoly& f, const SpaceParams& sp,
                           double tol) {
    LogSum acc;
    for (const auto& [nu, c] : f.terms()) {
        int d = mi_degree(nu);
        double log_nu_fact = 0.0;
        for (int v : nu) log_nu_fact += log_factorial(v);
        LogReal radial = integrate_semiline_log(
            [&](double r) {
                double e = -sp.alpha * std::pow(r, 2.0 * sp.ell);
                if (e < -800.0) return kNegInf;
                return (2.0 * d + 2.0 * sp.n - 1.0) * std::log(r) +
                       2.0 * sp.rho * std::log1p(r) + e;
            },
            tol * 0.1);
        acc.add(2.0 * std::log(std::abs(c)) + std::log(2.0) +
                log_factorial(sp.n) + log_nu_fact -
                log_factorial(sp.n - 1 + d) + radial.log());
    }
    return LogReal(0.5 * acc.log());
}

double poly_log_abs(const MultiIndexPoly& f, const std::vector<Complex>& z) {
    Complex v = f.eval(z);
    double m = std::abs(v);
    return m == 0.0 ? kNegInf : std::log(m);
}

LogReal norm_pointwise_cubature(const PointwiseLogAbs& log_abs,
                                const SpaceParams& sp, double tol) {
    const double pval = sp.p.val();
    const double ap2 = 0.5 * sp.alpha * pval;
    if (sp.n == 1) {
        auto outer = [&](double r) {
            double e = -ap2 * std::pow(r, 2.0 * sp.ell);
            if (e < -800.0) return kNegInf;
            LogReal a = angular_mean_log(
                [&](double phi) {
                    return pval * log_abs({r * cis(phi)});
                },
                tol * 0.1);
            return std::log(r) + sp.rho * pval * std::log1p(r) + e + a.log();
        };
        LogReal integral = integrate_semiline_log(outer, tol * 0.5);
        return LogReal((std::log(2.0) + integral.log()) / pval);
    }
    if (sp.n != 2)
        throw std::invalid_argument(
            "norm_pointwise: cubature supported for n<=2");
    // Sphere in C^2: w = r(sqrt(1-x) e^{i phi1}, sqrt(x) e^{i phi2}),
    // Leb = r^3 dr (1/2) dx dphi1 dphi2.
    const int nphi = 48, nx = 24;
    // Gauss-Legendre nodes on [0,1]
    std::vector<double> gx(nx), gw(nx);
    for (int i = 0; i < nx; ++i) {
        // Newton on Legendre P_nx
        double x = std::cos(kPi * (i + 0.75) / (nx + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= nx; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = nx * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= nx; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = nx * (x * p1 - p0) / (x * x - 1.0);
        gx[i] = 0.5 * (x + 1.0);
        gw[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // weight/2 on [0,1]
    }
    auto outer = [&](double r) {
        double e = -ap2 * std::pow(r, 2.0 * sp.ell);
        if (e < -800.0) return kNegInf;
        LogSum sphere;
        for (int i = 0; i < nx; ++i) {
            double c1 = r * std::sqrt(1.0 - gx[i]), c2 = r * std::sqrt(gx[i]);
            LogSum ang;
            for (int a = 0; a < nphi; ++a)
                for (int b = 0; b < nphi; ++b) {
                    std::vector<Complex> w = {c1 * cis(2.0 * kPi * a / nphi),
                                              c2 * cis(2.0 * kPi * b / nphi)};
                    ang.add(pval * log_abs(w));
                }
            sphere.add(std::log(gw[i]) + ang.log() -
                       2.0 * std::log(static_cast<double>(nphi)));
        }
        // angular means * (2pi)^2 * (1/2), Jacobian r^3
        double lsphere = sphere.log() + 2.0 * std::log(2.0 * kPi) -
                         std::log(2.0);
        return 3.0 * std::log(r) + sp.rho * pval * std::log1p(r) + e + lsphere;
    };
    LogReal integral = integrate_semiline_log(outer, tol);
    // (n!/pi^n) with n=2
    double lg = std::log(2.0) - 2.0 * std::log(kPi) + integral.log();
    return LogReal(lg / pval);
}

LogReal norm_pointwise_sup(const PointwiseLogAbs& log_abs,
                           const SpaceParams& sp) {
    auto wlog = [&](double r) {
        return sp.rho * std::log1p(r) -
               0.5 * sp.alpha * std::pow(r, 2.0 * sp.ell);
    };
    std::vector<double> rs = {0.0};
    for (int i = 0; i <= 200; ++i)
        rs.push_back(std::pow(10.0, -3.0 + 4.5 * i / 200.0));
    double best = kNegInf;
    if (sp.n == 1) {
        const int nphi = 64;
        double br = 0, bphi = 0;
        for (double r : rs)
            for (int k = 0; k < nphi; ++k) {
                double phi = 2.0 * kPi * k / nphi;
                double v = log_abs({r * cis(phi)}) + wlog(r);
                if (v > best) { best = v; br = r; bphi = phi; }
            }
        best = std::max(
            best, golden_max(
                      [&](double r) {
                          return log_abs({r * cis(bphi)}) + wlog(r);
                      },
                      std::max(0.0, br * 0.5), br * 2.0 + 1e-3,
                      1e-10 * (1.0 + br)));
        return LogReal(best);
    }
    if (sp.n != 2)
        throw std::invalid_argument(
            "norm_pointwise: sup scan supported for n<=2");
    const int nphi = 32, nx = 17;
    double br = 0;
    double bx = 0, bp1 = 0, bp2 = 0;
    for (double r : rs)
        for (int i = 0; i < nx; ++i) {
            double x = static_cast<double>(i) / (nx - 1);
            double c1 = r * std::sqrt(1.0 - x), c2 = r * std::sqrt(x);
            for (int a = 0; a < nphi; ++a)
                for (int b = 0; b < nphi; ++b) {
                    std::vector<Complex> w = {c1 * cis(2.0 * kPi * a / nphi),
                                              c2 * cis(2.0 * kPi * b / nphi)};
                    double v = log_abs(w) + wlog(r);
                    if (v > best) {
                        best = v;
                        br = r;
                        bx = x;
                        bp1 = 2.0 * kPi * a / nphi;
                        bp2 = 2.0 * kPi * b / nphi;
                    }
                }
        }
    best = std::max(
        best,
        golden_max(
            [&](double r) {
                std::vector<Complex> w = {
                    r * std::sqrt(1.0 - bx) * cis(bp1),
                    r * std::sqrt(bx) * cis(bp2)};
                return log_abs(w) + wlog(r);
            },
            std::max(0.0, br * 0.5), br * 2.0 + 1e-3, 1e-10 * (1.0 + br)));
    return LogReal(best);
}

}  // namespace

LogReal norm_poly(const MultiIndexPoly& f, const SpaceParams& sp, double tol) {
    sp.validate();
    if (f.dim() != sp.n)
        throw std::invalid_argument("norm_poly: dimension mismatch");
    if (sp.p.is_inf())
        return norm_pointwise_sup(
            [&](const std::vector<Complex>& w) { return poly_log_abs(f, w); },
            sp);
    if (sp.p.val() == 2.0) return norm_poly_exact_p2(f, sp, tol);
    return norm_pointwise_cubature(
        [&](const std::vector<Complex>& w) { return poly_log_abs(f, w); }, sp,
        tol);
}

LogReal norm_pointwise(const PointwiseLogAbs& log_abs, const SpaceParams& sp,
                       double tol) {
    sp.validate();
    if (sp.p.is_inf()) return norm_pointwise_sup(log_abs, sp);
    return norm_pointwise_cubature(log_abs, sp, tol);
}

RatioStats RatioStats_compute(const RatioReport& r) {
    RatioStats s;
    double ell = 1.0;
    if (auto it = r.params.find("ell"); it != r.params.end()) ell = it->second;
    std::vector<double> lr(r.grid.size());
    for (size_t i = 0; i < r.grid.size(); ++i)
        lr[i] = r.value_log[i] - r.envelope_log[i];
    s.min = *std::min_element(lr.begin(), lr.end());
    s.max = *std::max_element(lr.begin(), lr.end());
    double mean = 0.0;
    for (double v : lr) mean += v;
    mean /= lr.size();
    s.geomean = std::exp(mean);
    auto slope = [&](auto xf) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = static_cast<int>(lr.size());
        for (int i = 0; i < n; ++i) {
            double x = xf(r.grid[i]);
            sx += x;
            sy += lr[i];
            sxx += x * x;
            sxy += x * lr[i];
        }
        double den = n * sxx - sx * sx;
        return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
    };
    s.slope_r2l = slope([&](double z) { return std::pow(z, 2.0 * ell); });
    s.slope_log = slope([&](double z) { return std::log1p(z); });
    return s;
}

RatioStats RatioReport::stats() const { return RatioStats_compute(*this); }

std::string RatioReport::to_json() const {
    nlohmann::json j;
    j["params"] = params;
    j["grid"] = grid;
    auto expv = [](const std::vector<double>& lg) {
        std::vector<double> v(lg.size());
        for (size_t i = 0; i < lg.size(); ++i) v[i] = std::exp(lg[i]);
        return v;
    };
    j["value"] = expv(value_log);
    j["envelope"] = expv(envelope_log);
    j["value_log"] = value_log;
    j["envelope_log"] = envelope_log;
    RatioStats s = stats();
    j["log_ratio"] = {{"min", s.min},         {"max", s.max},
                      {"geomean", s.geomean}, {"slope_r2l", s.slope_r2l},
                      {"slope_log", s.slope_log}};
    return j.dump();
}

}  // namespace fock
