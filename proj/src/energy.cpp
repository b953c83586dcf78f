#include "vfront/energy.hpp"

#include "vfront/spectral.hpp"

#include <stdexcept>
#include <string>

namespace vfront {

RealField error_field(const RealField& phi, const RealField& approx, double eps)
{
    if (eps == 0.0) throw std::invalid_argument("error_field: eps must be nonzero");
    phi.check_same(approx);
    return (1.0 / (eps * eps)) * (phi - approx);
}

double energy_component(const RealField& R, const RealField& V, double eps, int k, double rho)
{
    const RealField dkR = dx_n(R, k);
    double e = inner(dkR, dkR);
    if (eps == 0.0 || rho == 0.0) return e;
    const RealField hR = hilbert(R);
    const RealField quad = dx_n(hilbert(product(hilbert(V), hR)), k + 1);
    const RealField cubic = dx_n(hilbert(product(hR, hR)), k + 1);
    e += 2.0 * eps * rho * inner(quad, dkR);
    e += eps * eps * rho * inner(cubic, dkR);
    return e;
}

EnergyReport modified_energy(const RealField& R, const RealField& V, double eps, int n, const ModelParams& p,
                             double t)
{
    R.check_same(V);
    const int n_min = p.sigma == 0.0 ? 2 : 3;
    if (n < n_min || n > R.size() / 4)
        throw std::invalid_argument("modified_energy: order n = " + std::to_string(n) + " outside [" +
                                    std::to_string(n_min) + ", " + std::to_string(R.size() / 4) + "]");
    EnergyReport rep;
    rep.t = t;
    rep.E0 = energy_component(R, V, eps, 0, p.rho);
    rep.En = energy_component(R, V, eps, n, p.rho);
    rep.E = rep.E0 + rep.En;
    rep.hn_norm_sq = derivative_energy(R, 0) + derivative_energy(R, n);
    rep.ratio = rep.hn_norm_sq > 0.0 ? rep.E / rep.hn_norm_sq : 0.0;
    return rep;
}

} // namespace vfront
