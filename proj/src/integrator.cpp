#include "vfront/integrator.hpp"

#include "vfront/models.hpp"
#include "vfront/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace vfront {

namespace {

std::string blow_up_message(double t, int i, double x)
{
    std::ostringstream os;
    os << "solver blow-up: non-finite value at x = " << x << " (index " << i << "), t = " << t;
    return os.str();
}

template <class T>
void check_finite(const Field<T>& f, double t)
{
    for (int i = 0; i < f.size(); ++i)
        if (!std::isfinite(std::abs(f[i]))) throw BlowUpError(t, i, f.grid().x(i));
}

template <class T, class Rhs>
Field<T> rk4_step(const Field<T>& y, double h, const Rhs& rhs)
{
    const Field<T> k1 = rhs(y);
    const Field<T> k2 = rhs(y + T(0.5 * h) * k1);
    const Field<T> k3 = rhs(y + T(0.5 * h) * k2);
    const Field<T> k4 = rhs(y + T(h) * k3);
    Field<T> out = y;
    out += T(h / 6.0) * (k1 + T(2.0) * (k2 + k3) + k4);
    return out;
}

template <class T, class Step, class Obs>
void drive(const Field<T>& y0, const StepperConfig& cfg, const Step& step, const Obs& observe)
{
    cfg.validate();
    check_finite(y0, 0.0);
    const int steps = cfg.steps();
    const double h = cfg.step();
    Field<T> y = y0;
    observe(0.0, y);
    for (int s = 1; s <= steps; ++s) {
        y = step(y, h);
        const double t = s * h;
        check_finite(y, t);
        if (s % cfg.record_every == 0 || s == steps) observe(t, y);
    }
}

} // namespace

void StepperConfig::validate() const
{
    if (!(dt > 0.0) || dt > 0.25)
        throw std::invalid_argument("StepperConfig: dt must lie in (0, 0.25], got " + std::to_string(dt));
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("StepperConfig: t_end must be finite and >= 0");
    if (record_every < 1) throw std::invalid_argument("StepperConfig: record_every must be >= 1");
}

int StepperConfig::steps() const
{
    if (t_end == 0.0) return 0;
    return static_cast<int>(std::ceil(t_end / dt - 1e-9));
}

double StepperConfig::step() const
{
    const int n = steps();
    return n == 0 ? dt : t_end / n;
}

BlowUpError::BlowUpError(double time, int index, double x)
    : std::runtime_error(blow_up_message(time, index, x)), time_(time), index_(index), x_(x)
{
}

RealField linear_propagator(const RealField& f, double t) { return exp_hilbert(f, t); }

void evolve(const RealField& f0, const NonlinearRhs& nonlinear, const StepperConfig& cfg,
            const Observer& observe)
{
    // Lawson RK4: RK4 applied to g = e^{-tH} f, written back in terms of f.
    auto step = [&](const RealField& f, double h) {
        const RealField k1 = nonlinear(f);
        const RealField f_half = linear_propagator(f, 0.5 * h);
        const RealField k2 = nonlinear(linear_propagator(f + (0.5 * h) * k1, 0.5 * h));
        const RealField k3 = nonlinear(f_half + (0.5 * h) * k2);
        const RealField k4 = nonlinear(linear_propagator(f, h) + h * linear_propagator(k3, 0.5 * h));
        RealField out = linear_propagator(f + (h / 6.0) * k1, h);
        out += (h / 3.0) * linear_propagator(k2 + k3, 0.5 * h);
        out += (h / 6.0) * k4;
        return out;
    };
    drive(f0, cfg, step, observe);
}

Trajectory<double> evolve(const RealField& f0, const NonlinearRhs& nonlinear, const StepperConfig& cfg)
{
    Trajectory<double> traj;
    evolve(f0, nonlinear, cfg, [&](double t, const RealField& f) {
        traj.times.push_back(t);
        traj.states.push_back(f);
    });
    return traj;
}

RealField slow_step(const RealField& v, double coeff, double dtau)
{
    return rk4_step(v, dtau, [coeff](const RealField& u) { return rhs_cubic_v(u, coeff); });
}

int slow_substeps(double max_amplitude, double coeff, double dtau, const TorusGrid& g)
{
    const double k_max = 0.5 * g.size() * 2.0 * std::numbers::pi / g.length();
    const double rate = std::abs(coeff) * max_amplitude * max_amplitude * k_max;
    return std::max(1, static_cast<int>(std::ceil(std::abs(dtau) * rate / 2.0 - 1e-12)));
}

RealField slow_advance(const RealField& v, double coeff, double dtau)
{
    const int sub = slow_substeps(max_abs(v), coeff, dtau, v.grid());
    RealField out = v;
    for (int k = 0; k < sub; ++k) out = slow_step(out, coeff, dtau / sub);
    return out;
}

void evolve_slow(const RealField& v0, double coeff, const StepperConfig& cfg, const Observer& observe)
{
    drive(v0, cfg, [coeff](const RealField& v, double h) { return slow_advance(v, coeff, h); }, observe);
}

Trajectory<double> evolve_slow(const RealField& v0, double coeff, const StepperConfig& cfg)
{
    Trajectory<double> traj;
    evolve_slow(v0, coeff, cfg, [&](double t, const RealField& v) {
        traj.times.push_back(t);
        traj.states.push_back(v);
    });
    return traj;
}

Trajectory<cplx> evolve_slow_envelope(const ComplexField& psi0, double coeff, const StepperConfig& cfg)
{
    Trajectory<cplx> traj;
    auto step = [coeff](const ComplexField& psi, double h) {
        const int sub = slow_substeps(2.0 * max_abs(psi), coeff, h, psi.grid());
        ComplexField out = psi;
        for (int k = 0; k < sub; ++k)
            out = rk4_step(out, h / sub, [coeff](const ComplexField& u) { return rhs_psi(u, coeff); });
        return out;
    };
    drive(psi0, cfg, step, [&](double t, const ComplexField& psi) {
        traj.times.push_back(t);
        traj.states.push_back(psi);
    });
    return traj;
}

} // namespace vfront
