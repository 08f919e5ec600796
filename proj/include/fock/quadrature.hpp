#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fock/core.hpp"
#include "fock/scaled.hpp"

namespace fock {

/// Integral of exp(flog(r)) dr over (0, inf), double-exponential transform,
/// accumulated in the log domain. flog may return -inf where the integrand
/// vanishes. Relative tolerance.
LogReal integrate_semiline_log(const std::function<double(double)>& flog,
                               double tol = 1e-10);

/// Integral of exp(flog(x)) dx over the finite interval (a,b), tanh-sinh
/// transform (endpoint singularities and jumps at the endpoints are fine).
LogReal integrate_interval_log(const std::function<double(double)>& flog,
                               double a, double b, double tol = 1e-10);

/// Mean over [0, 2pi) of exp(flog(phi)): trapezoid rule with node doubling.
LogReal angular_mean_log(const std::function<double(double)>& flog,
                         double tol = 1e-10, int n0 = 64);

/// Integral over the complex plane of g dV (n=1 normalization: dV = Leb/pi),
/// for ScaledComplex-valued g given in polar form.
ScaledComplex integrate_c1(
    const std::function<ScaledComplex(double r, double phi)>& g,
    double tol = 1e-9, int n_angular = 128);

/// A function on C^n of the form w -> F(w . conj(z)), carried as the
/// one-variable profile F (log-magnitude convention via ScaledComplex)
/// together with |z|. Evaluation depends on z only through |z| after a
/// unitary change of variables.
struct SliceFunction {
    std::function<ScaledComplex(Complex)> F;
    double abs_z = 1.0;
};

/// Weighted F^p / L^p norm of a slice function, via the exact reduction to
/// (v1 in C) x (|v'| >= 0). Supports p in [1, inf].
LogReal norm_slice(const SliceFunction& f, const SpaceParams& sp,
                   double tol = 1e-8);

/// Weighted p-norm of a coefficient polynomial. p=2 uses monomial
/// orthogonality plus a 1-D radial integral (exact in structure); other p
/// use direct cubature (supported for n in {1,2}); p=inf uses a scan plus
/// golden-section refinement.
LogReal norm_poly(const MultiIndexPoly& f, const SpaceParams& sp,
                  double tol = 1e-8);

/// Weighted p-norm of an arbitrary scalar function given pointwise through
/// log|g(w)| (return -inf where g vanishes). No holomorphy is assumed, so
/// everything goes through direct cubature (n in {1,2}) or, for p=inf, a
/// scan with golden-section refinement. This is the path used for gradient
/// moduli sum_nu |d^nu f|, which are not slice functions.
using PointwiseLogAbs = std::function<double(const std::vector<Complex>&)>;
LogReal norm_pointwise(const PointwiseLogAbs& log_abs, const SpaceParams& sp,
                       double tol = 1e-8);

struct RatioStats {
    double min = 0, max = 0, geomean = 0, slope_r2l = 0, slope_log = 0;
};

/// Value/envelope comparison along a grid of |z|; values kept as logs so
/// quantities beyond the double range survive.
struct RatioReport {
    std::map<std::string, double> params;
    std::vector<double> grid;
    std::vector<double> value_log;
    std::vector<double> envelope_log;

    RatioStats stats() const;  // slopes need params["ell"]
    std::string to_json() const;
};

}  // namespace fock
