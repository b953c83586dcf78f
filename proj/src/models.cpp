#include "vfront/models.hpp"

#include "vfront/spectral.hpp"

#include <cmath>

namespace vfront {

ModelParams euler_params(double m) { return ModelParams::general(m, m, 1.0); }

ModelParams bh_params(double m) { return ModelParams::general(m, std::sqrt(m * m + 1.0), 0.0); }

RealField rhs_front_nonlinear(const RealField& phi, const ModelParams& p, const QuadratureConfig& cfg)
{
    RealField out = (-0.5 * p.rho) * dx(product(phi, phi));
    if (p.sigma != 0.0) out -= p.sigma * n_quadrature(phi, cfg);
    return out;
}

RealField rhs_front(const RealField& phi, const ModelParams& p, const QuadratureConfig& cfg)
{
    return hilbert(phi) + rhs_front_nonlinear(phi, p, cfg);
}

RealField rhs_cubic_v(const RealField& v, double coeff) { return -coeff * cubic_term(v); }

RealField rhs_w(const RealField& w, double coeff) { return hilbert(w) + rhs_cubic_v(w, coeff); }

ComplexField rhs_psi(const ComplexField& psi, double coeff)
{
    const ComplexField f = refine(psi, 4);
    const ComplexField mod2 = multiply(f, conj(f));
    ComplexField inner = cplx(0.0, 1.0) * multiply(mod2, dx(f));
    inner += multiply(f, dx(hilbert(mod2)));
    return coeff * dx(project_P(coarsen(inner, psi.grid())));
}

} // namespace vfront
