#pragma once

#include <cmath>
#include <stdexcept>

#include "fock/scaled.hpp"

namespace fock {

/// log of the sector envelope phi_c: |e^{c lambda^l}| inside the sector
/// |arg lambda| <= pi/(2l), and 1 outside.
inline double phi_c_log(double c, double ell, Complex lambda) {
    if (c < 0.0) throw std::invalid_argument("phi_c: c must be >= 0");
    if (lambda == 0.0) return 0.0;
    double a = std::arg(lambda);
    if (std::abs(a) > kPi / (2.0 * ell)) return 0.0;
    return c * std::pow(std::abs(lambda), ell) * std::cos(ell * a);
}

inline LogReal phi_c(double c, double ell, Complex lambda) {
    return LogReal(phi_c_log(c, ell, lambda));
}

}  // namespace fock
