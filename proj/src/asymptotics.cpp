#include "vfront/asymptotics.hpp"

#include "vfront/spectral.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace vfront {

namespace {

const cplx I{0.0, 1.0};

ComplexField zero_like(const ComplexField& f) { return ComplexField(f.grid()); }

ComplexField modulus_squared(const ComplexField& psi) { return product(psi, conj(psi)); }

// Solution of -3i F + (1/2) G_x = H[F]: F = -(3i/16) G_x + (1/16) |d| G.
ComplexField third_harmonic_solve(const ComplexField& g)
{
    return cplx(0.0, -3.0 / 16.0) * dx(g) + cplx(1.0 / 16.0) * abs_dx(g);
}

// G = 2 rho Psi Psi12 + sigma (Psi^2 |d|Psi - Psi |d|Psi^2 + (1/3)|d|Psi^3).
ComplexField third_harmonic_forcing(const ComplexField& psi, const ComplexField& psi12, const ModelParams& p)
{
    ComplexField g = cplx(2.0 * p.rho) * product(psi, psi12);
    if (p.sigma != 0.0) {
        const ComplexField psi2 = product(psi, psi);
        ComplexField brace = product(psi, psi, abs_dx(psi));
        brace -= product(psi, abs_dx(psi2));
        brace += cplx(1.0 / 3.0) * abs_dx(product(psi, psi, psi));
        g += cplx(p.sigma) * brace;
    }
    return g;
}

// Directional derivative of third_harmonic_forcing along (d_psi, d_psi12).
ComplexField third_harmonic_forcing_rate(const ComplexField& psi, const ComplexField& psi12,
                                         const ComplexField& d_psi, const ComplexField& d_psi12,
                                         const ModelParams& p)
{
    ComplexField g = cplx(2.0 * p.rho) * (product(d_psi, psi12) + product(psi, d_psi12));
    if (p.sigma != 0.0) {
        const ComplexField psi2 = product(psi, psi);
        const ComplexField psi_dpsi = product(psi, d_psi);
        ComplexField brace = cplx(2.0) * product(psi, d_psi, abs_dx(psi));
        brace += product(psi, psi, abs_dx(d_psi));
        brace -= product(d_psi, abs_dx(psi2));
        brace -= cplx(2.0) * product(psi, abs_dx(psi_dpsi));
        brace += abs_dx(product(psi, psi, d_psi));
        g += cplx(p.sigma) * brace;
    }
    return g;
}

// B = (-rho^2 + sigma)|Psi|^2 Psi_x + i(sigma + rho^2) Psi H[|Psi|^2]_x + sigma Psi^2 Psi*_x,
// Psi21 = (1/2) Q[B]_x.
ComplexField first_harmonic_forcing(const ComplexField& psi, const ModelParams& p)
{
    const double r2 = p.rho * p.rho;
    const ComplexField mod2 = modulus_squared(psi);
    ComplexField b = cplx(p.sigma - r2) * product(mod2, dx(psi));
    b += cplx(0.0, p.sigma + r2) * product(psi, dx(hilbert(mod2)));
    b += cplx(p.sigma) * product(psi, psi, dx(conj(psi)));
    return b;
}

ComplexField first_harmonic_forcing_rate(const ComplexField& psi, const ComplexField& d_psi, const ModelParams& p)
{
    const double r2 = p.rho * p.rho;
    const ComplexField psi_bar = conj(psi);
    const ComplexField d_bar = conj(d_psi);
    const ComplexField mod2 = product(psi, psi_bar);
    const ComplexField d_mod2 = product(d_psi, psi_bar) + product(psi, d_bar);
    ComplexField b = cplx(p.sigma - r2) * (product(d_mod2, dx(psi)) + product(mod2, dx(d_psi)));
    b += cplx(0.0, p.sigma + r2) * (product(d_psi, dx(hilbert(mod2))) + product(psi, dx(hilbert(d_mod2))));
    b += cplx(p.sigma) * (cplx(2.0) * product(psi, d_psi, dx(psi_bar)) + product(psi, psi, dx(d_bar)));
    return b;
}

struct Harmonic {
    int n;
    ComplexField amplitude;
};

// sum_h (A_h e^{-i n t} + c.c.) + a0, with the imaginary residue checked.
RealField harmonic_sum(const std::vector<Harmonic>& terms, const RealField& a0, double t)
{
    ComplexField z = to_complex(a0);
    for (const Harmonic& h : terms) {
        const cplx phase = std::polar(1.0, -h.n * t);
        for (int i = 0; i < z.size(); ++i) {
            const cplx a = h.amplitude[i] * phase;
            z[i] += a + std::conj(a);
        }
    }
    const double scale = std::max(1.0, max_abs(z));
    if (max_abs(imag_part(z)) > 1e-12 * scale)
        throw std::logic_error("assemble_V: harmonic sum is not real");
    return real_part(z);
}

} // namespace

void AsymptoticProfiles::validate(double tol) const
{
    const double scale = std::max(1.0, max_abs(psi));
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("AsymptoticProfiles: ") + what);
    };
    need(psi.all_finite() && psi10.all_finite() && psi12.all_finite() && psi21.all_finite() &&
             psi23.all_finite(),
         "non-finite profile");
    need(negative_mode_content(psi) <= tol * scale, "psi is not analytic");
    need(negative_mode_content(psi12) <= tol * scale, "psi12 is not analytic");
    need(negative_mode_content(psi23) <= tol * scale, "psi23 is not analytic");
    need(positive_mode_content(psi21) <= tol * scale, "psi21 has positive-mode content");
}

ComplexField psi_from_v(const RealField& v) { return project_P(v); }

FirstCorrections first_corrections(const ComplexField& psi, double rho)
{
    FirstCorrections out;
    out.psi12 = cplx(0.0, -0.5 * rho) * dx(product(psi, psi));
    out.psi10 = -rho * dx(hilbert(real_part(modulus_squared(psi))));
    return out;
}

SecondCorrections second_corrections(const ComplexField& psi, const ModelParams& p)
{
    const FirstCorrections first = first_corrections(psi, p.rho);
    SecondCorrections out;
    out.psi23 = third_harmonic_solve(third_harmonic_forcing(psi, first.psi12, p));
    out.psi21 = cplx(0.5) * dx(project_Q(first_harmonic_forcing(psi, p)));
    return out;
}

AsymptoticProfiles build_profiles(const ComplexField& psi, const ModelParams& p, bool correctors)
{
    AsymptoticProfiles out{psi, RealField(psi.grid()), zero_like(psi), zero_like(psi), zero_like(psi), p,
                           correctors};
    if (!correctors) return out;
    const FirstCorrections first = first_corrections(psi, p.rho);
    const SecondCorrections second = second_corrections(psi, p);
    out.psi10 = first.psi10;
    out.psi12 = first.psi12;
    out.psi21 = second.psi21;
    out.psi23 = second.psi23;
    return out;
}

RealField assemble_V(const AsymptoticProfiles& pr, double t, double eps)
{
    const double e2 = eps * eps;
    const double e3 = e2 * eps;
    std::vector<Harmonic> terms;
    terms.push_back({1, cplx(eps) * pr.psi + cplx(e3) * pr.psi21});
    terms.push_back({2, cplx(e2) * pr.psi12});
    terms.push_back({3, cplx(e3) * pr.psi23});
    return harmonic_sum(terms, e2 * pr.psi10, t);
}

RealField leading_order_w(const RealField& v, double t, double eps) { return eps * exp_hilbert(v, t); }

ProfileRates profile_tau_derivatives(const AsymptoticProfiles& pr)
{
    const ModelParams& p = pr.params;
    ProfileRates out{rhs_psi(pr.psi, p.cubic_coeff), RealField(pr.psi.grid()), zero_like(pr.psi),
                     zero_like(pr.psi), zero_like(pr.psi)};
    if (!pr.correctors) return out;

    const ComplexField& psi = pr.psi;
    const ComplexField& d = out.psi;
    const ComplexField psi_d = product(psi, d);
    out.psi12 = cplx(0.0, -p.rho) * dx(psi_d);
    const RealField d_mod2 = 2.0 * real_part(product(conj(psi), d));
    out.psi10 = -p.rho * dx(hilbert(d_mod2));
    out.psi23 = third_harmonic_solve(third_harmonic_forcing_rate(psi, pr.psi12, d, out.psi12, p));
    out.psi21 = cplx(0.5) * dx(project_Q(first_harmonic_forcing_rate(psi, d, p)));
    return out;
}

RealField residual(const AsymptoticProfiles& pr, double t, double eps, const QuadratureConfig& cfg)
{
    const ModelParams& p = pr.params;
    const ProfileRates rates = profile_tau_derivatives(pr);
    const double e2 = eps * eps;
    const double e3 = e2 * eps;

    // Amplitudes A_n of e^{-int} and their time derivatives -in A_n + eps^2 dA_n/dtau.
    const ComplexField a1 = cplx(eps) * pr.psi + cplx(e3) * pr.psi21;
    const ComplexField a2 = cplx(e2) * pr.psi12;
    const ComplexField a3 = cplx(e3) * pr.psi23;
    const ComplexField a1_tau = cplx(eps) * rates.psi + cplx(e3) * rates.psi21;
    const ComplexField a2_tau = cplx(e2) * rates.psi12;
    const ComplexField a3_tau = cplx(e3) * rates.psi23;

    const RealField f = harmonic_sum({{1, a1}, {2, a2}, {3, a3}}, e2 * pr.psi10, t);
    const RealField f_t = harmonic_sum({{1, cplx(0.0, -1.0) * a1 + cplx(e2) * a1_tau},
                                        {2, cplx(0.0, -2.0) * a2 + cplx(e2) * a2_tau},
                                        {3, cplx(0.0, -3.0) * a3 + cplx(e2) * a3_tau}},
                                       (e2 * e2) * rates.psi10, t);

    RealField res = hilbert(f) - f_t;
    res -= (0.5 * p.rho) * dx(product(f, f));
    if (p.sigma != 0.0) res -= p.sigma * n_quadrature(f, cfg);
    return res;
}

RealField trilinear_M(const RealField& a, const RealField& b, const RealField& c)
{
    RealField out = product(a, b, abs_dx(c)) + product(b, c, abs_dx(a)) + product(c, a, abs_dx(b));
    out -= product(a, abs_dx(product(b, c)));
    out -= product(b, abs_dx(product(c, a)));
    out -= product(c, abs_dx(product(a, b)));
    out += abs_dx(product(a, b, c));
    return out;
}

long trilinear_symbol(long k, long xi, long eta)
{
    using std::labs;
    return labs(k) + labs(xi) + labs(eta) - labs(k + xi) - labs(xi + eta) - labs(k + eta) + labs(k + xi + eta);
}

std::vector<IdentityResidual> solvability_identities(const ComplexField& psi)
{
    const ComplexField psi_bar = conj(psi);
    const ComplexField mod2 = product(psi, psi_bar);
    const ComplexField psi2 = product(psi, psi);
    const ComplexField psi_x = dx(psi);
    const ComplexField psi_bar_x = dx(psi_bar);
    // P[i |Psi|^2 Psi_x] and P[i Psi^2 Psi*_x] recur on the right-hand sides.
    const ComplexField a = project_P(I * product(mod2, psi_x));
    const ComplexField b = project_P(I * product(psi2, psi_bar_x));

    auto err = [](const ComplexField& lhs, const ComplexField& rhs) { return max_abs(lhs - rhs); };
    std::vector<IdentityResidual> out;
    out.push_back({"-P[|Psi|^2 |d|Psi] = P[i|Psi|^2 Psi_x]",
                   err(cplx(-1.0) * project_P(product(mod2, abs_dx(psi))), a)});
    out.push_back({"-1/2 P[Psi^2 |d|Psi*] = -1/2 P[i Psi^2 Psi*_x]",
                   err(cplx(-0.5) * project_P(product(psi2, abs_dx(psi_bar))), cplx(-0.5) * b)});
    out.push_back({"P[Psi |d||Psi|^2] = P[Psi H[|Psi|^2]_x]",
                   err(project_P(product(psi, abs_dx(mod2))), project_P(product(psi, dx(hilbert(mod2)))))});
    out.push_back({"1/2 P[Psi* |d|Psi^2] = -P[i|Psi|^2 Psi_x]",
                   err(cplx(0.5) * project_P(product(psi_bar, abs_dx(psi2))), cplx(-1.0) * a)});
    out.push_back({"-1/2 P[|d|(Psi|Psi|^2)] = P[i|Psi|^2 Psi_x] + 1/2 P[i Psi^2 Psi*_x]",
                   err(cplx(-0.5) * project_P(abs_dx(product(psi, psi, psi_bar))), a + cplx(0.5) * b)});
    return out;
}

} // namespace vfront
