#pragma once

#include "vfront/grid.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfront {

struct StepperConfig {
    double dt = 0.05;
    double t_end = 0.0;
    int record_every = 1;

    /// dt must resolve the unit-frequency linear oscillation.
    void validate() const;
    /// Number of fixed steps; the step is shrunk so that steps * step == t_end.
    int steps() const;
    double step() const;
};

/// Raised when a trajectory produces a non-finite sample.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, int index, double x);
    double time() const { return time_; }
    int index() const { return index_; }
    double position() const { return x_; }

private:
    double time_;
    int index_;
    double x_;
};

template <class T>
struct Trajectory {
    std::vector<double> times;
    std::vector<Field<T>> states;
};

using NonlinearRhs = std::function<RealField(const RealField&)>;
using Observer = std::function<void(double, const RealField&)>;

/// e^{tH} f: cos(t) f + sin(t) H[f] on the mean-zero part, mean unchanged.
RealField linear_propagator(const RealField& f, double t);

/// Integrate f_t = H[f] + G(f) with the linear flow applied exactly as an
/// integrating factor and classical RK4 on G. Observer sees t = 0, then every
/// record_every steps, and always the final state.
void evolve(const RealField& f0, const NonlinearRhs& nonlinear, const StepperConfig& cfg,
            const Observer& observe);
Trajectory<double> evolve(const RealField& f0, const NonlinearRhs& nonlinear, const StepperConfig& cfg);

/// Classical RK4 for v_tau = -coeff * cubic_term(v), each step split by slow_substeps.
Trajectory<double> evolve_slow(const RealField& v0, double coeff, const StepperConfig& cfg);
void evolve_slow(const RealField& v0, double coeff, const StepperConfig& cfg, const Observer& observe);

/// Classical RK4 (with the same substepping) for the envelope form Psi_tau = rhs_psi(Psi, coeff).
Trajectory<cplx> evolve_slow_envelope(const ComplexField& psi0, double coeff, const StepperConfig& cfg);

/// One classical RK4 step of v_tau = -coeff * cubic_term(v).
RealField slow_step(const RealField& v, double coeff, double dtau);

/// RK4 substeps needed to keep dtau stable for the slow equation. Growth of
/// mode k near a profile of height a is about |coeff| a^2 |k|, so the step is
/// split until dtau |coeff| a^2 k_max <= 2.
int slow_substeps(double max_amplitude, double coeff, double dtau, const TorusGrid& g);

/// slow_step repeated over slow_substeps equal pieces of dtau.
RealField slow_advance(const RealField& v, double coeff, double dtau);

} // namespace vfront
