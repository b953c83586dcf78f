#pragma once

#include "vfront/grid.hpp"

#include <cstdint>

// The nonlocal front nonlinearity
//
//   N[phi](x) = (1/2pi) int_R [phi_x(x) - phi_x(x+z)] log(1 + (phi(x) - phi(x+z))^2 / z^2) dz
//
// evaluated for periodic phi. The integral over the line is folded onto one
// period by summing the kernel over all translates z + nL, then integrated
// with the trapezoid rule on the field's own grid. The integrand is analytic
// and vanishes at z = 0, so the rule converges spectrally.

namespace vfront {

enum class KernelSum {
    /// All periodic images summed in closed form:
    ///   sum_n log(1 + a^2/(s+nL)^2) = log(1 + sinh^2(pi a/L) / sin^2(pi s/L)).
    closed_form,
    /// Direct sum over |n| <= n_images. Truncation error decays like 1/(n_images L).
    image_sum,
};

struct QuadratureConfig {
    int n_images = 8;
    KernelSum kernel = KernelSum::closed_form;

    void validate() const;
};

/// (1/2) d/dx { phi^2 |d|phi - phi |d|phi^2 + (1/3) |d| phi^3 }, the exact cubic part of N.
RealField cubic_term(const RealField& phi);

/// N[phi] by periodized trapezoid quadrature.
RealField n_quadrature(const RealField& phi, const QuadratureConfig& cfg = {});

/// Partial sum through k_max of
///   sum_k (-1)^{k+1} / (2 pi k (2k+1)) d/dx int (phi(x) - phi(x+z))^{2k+1} / z^{2k} dz.
/// Throws std::domain_error unless max |phi_x| < 1.
RealField n_series(const RealField& phi, int k_max, const QuadratureConfig& cfg = {});

/// Quintic and higher part: n_quadrature(phi) - cubic_term(phi).
RealField quintic_remainder(const RealField& phi, const QuadratureConfig& cfg = {});

/// Number of n_quadrature calls made by this process (all threads).
std::uint64_t nonlocal_evaluation_count();

} // namespace vfront
