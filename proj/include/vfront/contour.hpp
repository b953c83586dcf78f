#pragma once

#include "vfront/grid.hpp"
#include "vfront/nonlocal.hpp"
#include "vfront/spectral.hpp"

#include <vector>

// Velocity field of a periodic vorticity front y = phi(x) separating constant
// negative vorticities alpha_+ (above) and alpha_- (below), reconstructed by
// contour dynamics with the base line y = c:
//
//   u = Theta/(4pi) int log[((x-x')^2 + (y-phi(x'))^2) / ((x-x')^2 + (y-c)^2)] dx'
//       + Xi y / 2 + Theta |y - c| / 2,
//   v = Theta/(4pi) int log[(x-x')^2 + (y-phi(x'))^2] phi'(x') dx',
//
// Theta = alpha_+ - alpha_-, Xi = alpha_+ + alpha_-. Line integrals are folded
// onto one period with the closed-form image sum. The log kernel is divided by
// its value for a flat front at the local height phi(x); the quotient is
// integrated by the trapezoid rule and the flat-front part is added exactly
// (for v this is the Hilbert-transform piece). Points on the front itself are
// therefore admissible.

namespace vfront {

struct ShearParams {
    double alpha_plus = 1.0;
    double alpha_minus = -1.0;
    double c = 0.0;

    static ShearParams from_vorticities(double alpha_plus, double alpha_minus, double c = 0.0);
    /// Time scaled so that Theta / 2 = 1, with asymmetry m = Xi / Theta.
    static ShearParams normalized(double m, double c = 0.0);

    double theta() const { return alpha_plus - alpha_minus; }
    double xi() const { return alpha_plus + alpha_minus; }
    /// Unperturbed shear profile Xi y / 2 + Theta |y - c| / 2.
    double shear_u(double y) const { return 0.5 * xi() * y + 0.5 * theta() * std::abs(y - c); }
    void validate() const;
};

struct Velocity {
    double u = 0.0;
    double v = 0.0;
};

struct SliceRow {
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
};

/// Precomputed front data for repeated velocity evaluations.
class ContourField {
public:
    ContourField(const RealField& phi, const ShearParams& p, const QuadratureConfig& cfg = {});

    Velocity at(double x, double y) const;
    /// Velocity at grid node i on the front, y = phi(x_i).
    Velocity on_front(int i) const;

    const RealField& front() const { return phi_; }

private:
    Velocity evaluate(double x, double y, double front_height, double front_slope, bool on_front) const;

    RealField phi_;
    RealField phi_x_;
    Spectrum phi_spectrum_;
    ShearParams params_;
    QuadratureConfig cfg_;
};

Velocity velocity_at(const RealField& phi, double x, double y, const ShearParams& p,
                     const QuadratureConfig& cfg = {});

/// phi_t from the normal velocity of the front, -phi_x u + v evaluated on y = phi(x).
RealField front_normal_velocity(const RealField& phi, const ShearParams& p, const QuadratureConfig& cfg = {});

/// (y, u, v) along the vertical line x = x0.
std::vector<SliceRow> profile_slice(const RealField& phi, double x0, const std::vector<double>& y_values,
                                    const ShearParams& p, const QuadratureConfig& cfg = {});

} // namespace vfront
