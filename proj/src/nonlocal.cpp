#include "vfront/nonlocal.hpp"

#include "vfront/spectral.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace vfront {

namespace {

std::atomic<std::uint64_t> g_quadrature_calls{0};

constexpr double pi = std::numbers::pi;

// Offset s_j = j h for j = 1..n-1; slot 0 is never used (the integrand vanishes there).
std::vector<double> offsets(const TorusGrid& g)
{
    std::vector<double> s(g.size());
    for (int j = 0; j < g.size(); ++j) s[j] = g.x(j);
    return s;
}

// sum_{|n| <= images} (s + nL)^{-p}, with the remaining tail replaced by its integral.
double image_weight(double s, double L, int p, int images, bool add_tail)
{
    double w = 0.0;
    for (int n = -images; n <= images; ++n) w += std::pow(s + n * L, -p);
    if (add_tail) w += 2.0 / ((p - 1) * std::pow(L, p) * std::pow(images + 0.5, p - 1));
    return w;
}

// Fully periodized weight sum_n (s + nL)^{-2k}.
std::vector<double> periodized_weights(const TorusGrid& g, int k, const QuadratureConfig& cfg)
{
    const double L = g.length();
    const auto s = offsets(g);
    std::vector<double> w(g.size(), 0.0);
    for (int j = 1; j < g.size(); ++j) {
        if (cfg.kernel == KernelSum::image_sum) {
            w[j] = image_weight(s[j], L, 2 * k, cfg.n_images, false);
        } else if (k == 1) {
            const double sn = std::sin(pi * s[j] / L);
            w[j] = (pi / L) * (pi / L) / (sn * sn);
        } else {
            w[j] = image_weight(s[j], L, 2 * k, 1000, true);
        }
    }
    return w;
}

} // namespace

void QuadratureConfig::validate() const
{
    if (n_images < 1) throw std::invalid_argument("QuadratureConfig: n_images must be >= 1");
}

RealField cubic_term(const RealField& phi)
{
    // Evaluated on a 4x grid so every cubic product is exact before truncation;
    // the leading-order derivative terms then cancel as they do in the continuum.
    const RealField f = refine(phi, 4);
    const RealField d_f = abs_dx(f);
    const RealField f2 = multiply(f, f);
    RealField brace = multiply(f2, d_f);
    brace -= multiply(f, abs_dx(f2));
    brace += (1.0 / 3.0) * abs_dx(multiply(f2, f));
    return 0.5 * dx(coarsen(brace, phi.grid()));
}

RealField n_quadrature(const RealField& phi, const QuadratureConfig& cfg)
{
    cfg.validate();
    g_quadrature_calls.fetch_add(1, std::memory_order_relaxed);

    const TorusGrid& g = phi.grid();
    const int n = g.size();
    const double L = g.length();
    const double h = g.spacing();
    const RealField phi_x = dx(phi);
    const auto s = offsets(g);

    std::vector<double> inv_sin2(n, 0.0);
    for (int j = 1; j < n; ++j) {
        const double sn = std::sin(pi * s[j] / L);
        inv_sin2[j] = 1.0 / (sn * sn);
    }

    auto kernel = [&](double a, int j) {
        if (cfg.kernel == KernelSum::closed_form) {
            const double sh = std::sinh(pi * a / L);
            return std::log1p(sh * sh * inv_sin2[j]);
        }
        double k = 0.0;
        for (int m = -cfg.n_images; m <= cfg.n_images; ++m) {
            const double z = s[j] + m * L;
            k += std::log1p(a * a / (z * z));
        }
        return k;
    };

    // The pair (i, i+j) and (i+j, n-j) share one kernel value with opposite bracket sign.
    std::vector<double> acc(n, 0.0);
    for (int j = 1; j <= n / 2; ++j) {
        const int i_end = (j == n / 2) ? n / 2 : n;
        for (int i = 0; i < i_end; ++i) {
            const int k = (i + j) % n;
            const double K = kernel(phi[i] - phi[k], j);
            const double term = (phi_x[i] - phi_x[k]) * K;
            acc[i] += term;
            acc[k] -= term;
        }
    }
    const double scale = h / (2.0 * pi);
    for (double& v : acc) v *= scale;
    return RealField(g, std::move(acc));
}

RealField n_series(const RealField& phi, int k_max, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (k_max < 1) throw std::invalid_argument("n_series: k_max must be >= 1");
    const double slope = max_abs(dx(phi));
    if (!(slope < 1.0))
        throw std::domain_error("n_series: max |phi_x| = " + std::to_string(slope) +
                                " violates the series bound max |phi_x| < 1");

    const TorusGrid& g = phi.grid();
    const int n = g.size();
    const double h = g.spacing();
    RealField total(g);
    for (int k = 1; k <= k_max; ++k) {
        const auto w = periodized_weights(g, k, cfg);
        RealField integral(g);
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int j = 1; j < n; ++j) {
                const double d = phi[i] - phi[(i + j) % n];
                sum += std::pow(d, 2 * k + 1) * w[j];
            }
            integral[i] = h * sum;
        }
        const double coeff = ((k % 2 == 1) ? 1.0 : -1.0) / (2.0 * pi * k * (2 * k + 1));
        total += coeff * dx(integral);
    }
    return total;
}

RealField quintic_remainder(const RealField& phi, const QuadratureConfig& cfg)
{
    return n_quadrature(phi, cfg) - cubic_term(phi);
}

std::uint64_t nonlocal_evaluation_count() { return g_quadrature_calls.load(); }

} // namespace vfront
