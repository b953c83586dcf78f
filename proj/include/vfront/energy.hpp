#pragma once

#include "vfront/grid.hpp"
#include "vfront/models.hpp"

namespace vfront {

/// Modified energy of the scaled error R at one instant.
struct EnergyReport {
    double t = 0.0;
    double E0 = 0.0;
    double En = 0.0;
    double E = 0.0;
    double hn_norm_sq = 0.0;  // ||R||^2_{H^n}
    double ratio = 0.0;       // E / hn_norm_sq, 0 when R vanishes
};

/// R = (phi - eps V) / eps^2, where `approx` is the field eps V.
RealField error_field(const RealField& phi, const RealField& approx, double eps);

/// E = E_0 + E_n with
///   E_k = int (d^k R)^2 + 2 eps rho int d^{k+1} H[H[V] H[R]] d^k R
///                       + eps^2 rho int d^{k+1} H[(H[R])^2] d^k R,
/// where V is the O(1) approximate solution (eps V the asymptotic field).
/// Requires n >= 2 when sigma == 0 and n >= 3 otherwise.
EnergyReport modified_energy(const RealField& R, const RealField& V, double eps, int n, const ModelParams& p,
                             double t = 0.0);

/// The k-th order piece E_k above (k = 0 gives E_0).
double energy_component(const RealField& R, const RealField& V, double eps, int k, double rho);

} // namespace vfront
