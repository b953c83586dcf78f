#pragma once

#include "vfront/grid.hpp"
#include "vfront/nonlocal.hpp"

// Right-hand sides of the front equation family
//
//   phi_t = H[phi] - (rho/2) (phi^2)_x - sigma N[phi]
//
// and of its slow-time cubic asymptotic equation, in real and envelope form.

namespace vfront {

/// (rho, sigma) select the equation; m is the vorticity asymmetry (a+ + a-)/(a+ - a-)
/// and is carried as metadata. cubic_coeff = rho^2 + sigma.
struct ModelParams {
    double m = 0.0;
    double rho = 0.0;
    double sigma = 0.0;
    double cubic_coeff = 0.0;

    static ModelParams general(double m, double rho, double sigma)
    {
        return ModelParams{m, rho, sigma, rho * rho + sigma};
    }
};

/// Euler vorticity front: rho = m, sigma = 1.
ModelParams euler_params(double m);
/// Burgers-Hilbert: rho = sqrt(m^2 + 1), sigma = 0.
ModelParams bh_params(double m);

/// Full right-hand side. The nonlocal term is skipped entirely when sigma == 0.
RealField rhs_front(const RealField& phi, const ModelParams& p, const QuadratureConfig& cfg = {});
/// rhs_front without the H[phi] term (the part integrated by RK4 in the rotating frame).
RealField rhs_front_nonlinear(const RealField& phi, const ModelParams& p, const QuadratureConfig& cfg = {});

/// v_tau = -coeff * cubic_term(v), coeff playing the role of rho^2 + sigma.
RealField rhs_cubic_v(const RealField& v, double coeff);

/// w_t = H[w] - coeff * cubic_term(w).
RealField rhs_w(const RealField& w, double coeff);

/// Psi_tau = coeff * d/dx P[ i|Psi|^2 Psi_x + Psi H[|Psi|^2]_x ].
ComplexField rhs_psi(const ComplexField& psi, double coeff);

} // namespace vfront
