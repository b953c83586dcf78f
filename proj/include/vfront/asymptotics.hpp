#pragma once

#include "vfront/grid.hpp"
#include "vfront/models.hpp"
#include "vfront/nonlocal.hpp"

#include <string>
#include <vector>

// Three-term multiple-scale approximate solution of the front equation,
//
//   eps V = eps   (Psi e^{-it} + c.c.)
//         + eps^2 (Psi12 e^{-2it} + Psi10 + c.c.)
//         + eps^3 (Psi23 e^{-3it} + Psi21 e^{-it} + c.c.),
//
// built from an analytic envelope Psi(x, tau) with tau = eps^2 t. Homogeneous
// solutions of the corrector equations are omitted. The envelope is expected
// to carry no mean mode.

namespace vfront {

struct AsymptoticProfiles {
    ComplexField psi;    // analytic
    RealField psi10;
    ComplexField psi12;  // analytic
    ComplexField psi21;  // Q-range
    ComplexField psi23;  // analytic
    ModelParams params;
    /// false: Psi10..Psi23 are zero and eps V reduces to its leading term.
    bool correctors = true;

    /// Throws std::logic_error if an analyticity or finiteness invariant fails.
    void validate(double tol = 1e-10) const;
};

/// d/dtau of every profile, Psi_tau taken from the envelope equation.
struct ProfileRates {
    ComplexField psi;
    RealField psi10;
    ComplexField psi12;
    ComplexField psi21;
    ComplexField psi23;
};

struct FirstCorrections {
    ComplexField psi12;
    RealField psi10;
};

struct SecondCorrections {
    ComplexField psi23;
    ComplexField psi21;
};

/// Psi = P[v] = (v + iH[v]) / 2.
ComplexField psi_from_v(const RealField& v);

/// Psi12 = -(i rho / 2) (Psi^2)_x,  Psi10 = -rho H[|Psi|^2]_x.
FirstCorrections first_corrections(const ComplexField& psi, double rho);

/// Third-harmonic and first-harmonic corrections at order eps^3.
SecondCorrections second_corrections(const ComplexField& psi, const ModelParams& p);

AsymptoticProfiles build_profiles(const ComplexField& psi, const ModelParams& p, bool correctors = true);

/// The real field eps V at fast time t. Throws std::logic_error if the
/// harmonic sum leaves an imaginary residue above 1e-12 relative.
RealField assemble_V(const AsymptoticProfiles& profiles, double t, double eps);

/// eps [v cos t + H[v] sin t] (the mean of v, if any, is carried unrotated).
RealField leading_order_w(const RealField& v, double t, double eps);

ProfileRates profile_tau_derivatives(const AsymptoticProfiles& profiles);

/// Res(f) = -f_t - (rho/2)(f^2)_x - sigma N[f] + H[f] for f = eps V, with f_t
/// assembled analytically from the fast phases and the profile rates.
RealField residual(const AsymptoticProfiles& profiles, double t, double eps, const QuadratureConfig& cfg = {});

/// Symmetric trilinear operator with M(w,w,w) = 3w^2|d|w - 3w|d|w^2 + |d|w^3.
RealField trilinear_M(const RealField& a, const RealField& b, const RealField& c);

/// Symbol of M on exponentials e^{ikx}, e^{i xi x}, e^{i eta x}.
long trilinear_symbol(long k, long xi, long eta);

struct IdentityResidual {
    std::string name;
    double max_error;
};

/// The five projected identities that reduce the first-harmonic solvability
/// condition to the envelope equation, each as max |lhs - rhs| for this Psi.
std::vector<IdentityResidual> solvability_identities(const ComplexField& psi);

} // namespace vfront
