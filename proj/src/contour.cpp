#include "vfront/contour.hpp"

#include "vfront/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vfront {

namespace {

constexpr double pi = std::numbers::pi;

// Heights closer than this (relative) to the front are evaluated with the on-front limit.
constexpr double on_front_tol = 1e-13;

} // namespace

ShearParams ShearParams::from_vorticities(double alpha_plus, double alpha_minus, double c)
{
    ShearParams p{alpha_plus, alpha_minus, c};
    p.validate();
    return p;
}

ShearParams ShearParams::normalized(double m, double c) { return from_vorticities(m + 1.0, m - 1.0, c); }

void ShearParams::validate() const
{
    if (theta() == 0.0) throw std::invalid_argument("ShearParams: alpha_plus and alpha_minus must differ");
    if (!std::isfinite(alpha_plus) || !std::isfinite(alpha_minus) || !std::isfinite(c))
        throw std::invalid_argument("ShearParams: non-finite parameter");
}

ContourField::ContourField(const RealField& phi, const ShearParams& p, const QuadratureConfig& cfg)
    : phi_(phi), phi_x_(dx(phi)), phi_spectrum_(forward(phi)), params_(p), cfg_(cfg)
{
    p.validate();
    cfg.validate();
}

Velocity ContourField::at(double x, double y) const
{
    const double height = interpolate(phi_, x);
    const double slope = interpolate(phi_x_, x);
    const double scale = std::max(1.0, std::abs(y));
    return evaluate(x, y, height, slope, std::abs(y - height) <= on_front_tol * scale);
}

Velocity ContourField::on_front(int i) const { return evaluate(phi_.grid().x(i), phi_[i], phi_[i], phi_x_[i], true); }

Velocity ContourField::evaluate(double x, double y, double front_height, double front_slope, bool on_front) const
{
    const TorusGrid& g = phi_.grid();
    const int n = g.size();
    const double L = g.length();
    const double h = g.spacing();
    const double theta = params_.theta();
    const double b_x = on_front ? 0.0 : y - front_height;  // offset from the local front height
    const double half_bx = pi * b_x / L;
    const double sinh_half_bx = std::sinh(half_bx);

    // log[(cosh B - cos S) / (cosh B_x - cos S)], B = 2pi(y - phi(x'))/L, S = 2pi(x - x')/L.
    auto log_ratio = [&](double b, double s) {
        if (cfg_.kernel == KernelSum::image_sum) {
            double k = 0.0;
            for (int m = -cfg_.n_images; m <= cfg_.n_images; ++m) {
                const double z = s + m * L;
                if (z == 0.0 && b_x == 0.0) {
                    k += std::log1p(front_slope * front_slope);
                    continue;
                }
                k += std::log((z * z + b * b) / (z * z + b_x * b_x));
            }
            return k;
        }
        const double half_b = pi * b / L;
        const double sin_half_s = std::sin(pi * s / L);
        const double den = sinh_half_bx * sinh_half_bx + sin_half_s * sin_half_s;
        if (den == 0.0) return std::log1p(front_slope * front_slope);
        const double sp = std::sinh(half_b + half_bx);
        const double sm = std::sinh(half_b - half_bx);
        return std::log1p(sp * sm / den);
    };

    double q_u = 0.0;
    double q_v = 0.0;
    for (int j = 0; j < n; ++j) {
        const double s = x - g.x(j);
        const double k = log_ratio(y - phi_[j], s);
        q_u += k;
        q_v += k * phi_x_[j];
    }
    q_u *= h;
    q_v *= h;

    // Exact convolution of log(cosh A - cos S) with phi', A = 2pi b_x / L; tends to 2pi H[phi] on the front.
    const double a = std::abs(2.0 * pi * b_x / L);
    double conv = 0.0;
    for (int j = 0; j < n; ++j) {
        const int mode = g.mode(j);
        if (mode == 0 || g.is_nyquist(j)) continue;
        const double kappa = g.wavenumber(j);
        const cplx d = cplx(0.0, kappa) * phi_spectrum_[j];
        const double weight = -L * std::exp(-std::abs(mode) * a) / std::abs(mode);
        conv += weight * (d * std::polar(1.0, kappa * x)).real();
    }

    Velocity out;
    out.u = theta / (4.0 * pi) * q_u + 0.5 * theta * std::abs(b_x) + 0.5 * params_.xi() * y;
    out.v = theta / (4.0 * pi) * (q_v + conv);
    return out;
}

Velocity velocity_at(const RealField& phi, double x, double y, const ShearParams& p, const QuadratureConfig& cfg)
{
    return ContourField(phi, p, cfg).at(x, y);
}

RealField front_normal_velocity(const RealField& phi, const ShearParams& p, const QuadratureConfig& cfg)
{
    const ContourField field(phi, p, cfg);
    const RealField phi_x = dx(phi);
    RealField out(phi.grid());
    for (int i = 0; i < phi.size(); ++i) {
        const Velocity vel = field.on_front(i);
        out[i] = -phi_x[i] * vel.u + vel.v;
    }
    return out;
}

std::vector<SliceRow> profile_slice(const RealField& phi, double x0, const std::vector<double>& y_values,
                                    const ShearParams& p, const QuadratureConfig& cfg)
{
    const ContourField field(phi, p, cfg);
    std::vector<SliceRow> rows;
    rows.reserve(y_values.size());
    for (double y : y_values) {
        const Velocity vel = field.at(x0, y);
        rows.push_back({y, vel.u, vel.v});
    }
    return rows;
}

} // namespace vfront
