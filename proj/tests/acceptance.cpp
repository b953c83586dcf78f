// Acceptance run: one PASS/FAIL line per criterion. Every tolerance is fixed here.

#include "vfront/asymptotics.hpp"
#include "vfront/contour.hpp"
#include "vfront/harness.hpp"
#include "vfront/integrator.hpp"
#include "vfront/models.hpp"
#include "vfront/nonlocal.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vfront;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!detail.str().empty()) detail << "; ";
        detail << what << (ok ? "" : " [x]");
        pass = pass && ok;
    }
};

std::string num(double x, int digits = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0) o.require(secs < limit_s, "runtime " + num(secs) + " s < " + num(limit_s) + " s");
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
}

double slope_of(const std::vector<double>& eps, const std::vector<double>& v) { return fit_loglog_slope(eps, v).slope; }

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

ExperimentConfig base(ModelKind model, double m, int n)
{
    ExperimentConfig c;
    c.model = model;
    c.m = m;
    c.n = n;
    c.epsilons = {0.2, 0.1, 0.05};
    c.T = 1.0;
    c.n_points = 256;
    c.dt = 0.05;
    c.quadrature.n_images = 8;
    return c;
}

std::string label(const ExperimentConfig& c) { return to_string(c.model) + " m=" + num(c.m); }

// min / max of E/||R||^2 over records with R != 0.
std::pair<double, double> ratio_range(const EnergyTrace& tr)
{
    double lo = 1e300, hi = -1e300;
    for (const auto& r : tr.reports) {
        if (r.hn_norm_sq <= 0.0) continue;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    return {lo, hi};
}

} // namespace

int main()
{
    std::vector<IdentityRow> ids;
    double id_seconds = 0.0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        ids = run_identities(20240601);
        id_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    auto identity_block = [&](Outcome& o, const std::vector<std::string>& prefixes, double tol, double limit) {
        for (const auto& r : ids)
            for (const auto& p : prefixes)
                if (r.name.rfind(p, 0) == 0) o.require(r.max_error <= tol, r.name + " " + num(r.max_error) + " <= " + num(tol));
        o.require(id_seconds < limit, "battery runtime " + num(id_seconds) + " s < " + num(limit) + " s");
    };

    criterion(1, "operator identities", 0, [&](Outcome& o) {
        identity_block(o, {"cotlar", "hilbert_squared", "abs_dx_equals_h_dx", "p_", "pq_", "hilbert_skew"}, 1e-9, 5.0);
    });
    criterion(2, "trilinear symbol and flow commutation", 0, [&](Outcome& o) {
        for (const auto& r : ids) {
            if (r.name == "trilinear_symbol_sign_sum") o.require(r.max_error == 0.0, "violations " + num(r.max_error));
            if (r.name == "trilinear_commutes_with_flow") o.require(r.max_error <= 1e-10, r.name + " " + num(r.max_error) + " <= 1e-10");
        }
        o.require(trilinear_symbol(1, 1, 1) == 0 && trilinear_symbol(1, 1, -1) == 2, "spot values m(1,1,1)=0, m(1,1,-1)=2");
        o.require(id_seconds < 10.0, "battery runtime " + num(id_seconds) + " s < 10 s");
    });
    criterion(3, "solvability identities", 0, [&](Outcome& o) { identity_block(o, {"solvability_"}, 1e-10, 5.0); });

    criterion(4, "quintic remainder of the nonlocal term", 30.0, [&](Outcome& o) {
        const TorusGrid g(256);
        const std::vector<double> eps{0.2, 0.1, 0.05};
        for (int shape : {0, 1}) {
            std::vector<double> norms;
            for (double e : eps) {
                const RealField phi = RealField::from_function(
                    g, [=](double x) { return e * (std::cos(x) + (shape ? 0.5 * std::cos(2.0 * x) : 0.0)); });
                norms.push_back(sobolev_norm(quintic_remainder(phi), 1));
            }
            const double s = slope_of(eps, norms);
            o.require(within(s, 5.0, 0.3), std::string(shape ? "cos x + cos 2x / 2" : "cos x") + " slope " + num(s, 4) + " in 5 +- 0.3");
        }
        const RealField small = RealField::from_function(g, [](double x) { return 0.05 * std::cos(x); });
        const double gap = max_abs(n_series(small, 1) - cubic_term(small));
        o.require(gap <= 1e-6, "series k_max=1 vs cubic " + num(gap) + " <= 1e-6");
    });

    criterion(5, "residual of the approximate solution", 300.0, [&](Outcome& o) {
        for (ModelKind model : {ModelKind::euler, ModelKind::bh}) {
            for (double m : {0.0, 1.0}) {
                ExperimentConfig c = base(model, m, 3);
                const ConvergenceTable t = run_residual_scaling(c);
                if (c.params().rho == 0.0) {
                    // rho = 0: the equation is odd in phi and the eps^4 part of the residual vanishes identically.
                    o.require(within(t.fitted_slope, 5.0, 0.3), label(c) + " slope " + num(t.fitted_slope, 4) + " in 5 +- 0.3 (odd case)");
                } else {
                    o.require(within(t.fitted_slope, 4.0, 0.3), label(c) + " slope " + num(t.fitted_slope, 4) + " in 4 +- 0.3");
                }
            }
        }
        ExperimentConfig neg = base(ModelKind::bh, 0.0, 3);
        neg.correctors = false;
        const double s = run_residual_scaling(neg).fitted_slope;
        o.require(s <= 2.5, "correctors off slope " + num(s, 4) + " <= 2.5");
    });

    // Criterion 6 runs carry energy traces for criterion 9.
    struct Run {
        ExperimentConfig cfg;
        std::vector<EnergyTrace> traces;
    };
    std::vector<Run> runs{{base(ModelKind::bh, 0.0, 2), {}}, {base(ModelKind::euler, 1.0, 3), {}}};
    criterion(6, "approximation error over the slow time scale", 900.0, [&](Outcome& o) {
        for (auto& r : runs) {
            const ConvergenceTable t = run_theorem_21(r.cfg, &r.traces);
            o.require(within(t.fitted_slope, 2.0, 0.3), label(r.cfg) + " n=" + std::to_string(r.cfg.n) + " slope " +
                                                            num(t.fitted_slope, 4) + " in 2 +- 0.3");
        }
    });

    criterion(7, "euler versus burgers-hilbert", 900.0, [&](Outcome& o) {
        for (double m : {0.0, 1.0}) {
            ExperimentConfig c = base(ModelKind::euler, m, 3);
            c.compare_model = ModelKind::bh;
            const ConvergenceTable t = run_theorem_22(c);
            o.require(within(t.fitted_slope, 2.0, 0.3), "m=" + num(m) + " slope " + num(t.fitted_slope, 4) + " in 2 +- 0.3");
        }
    });

    criterion(8, "traveling wave of the cubic equation", 10.0, [&](Outcome& o) {
        const TorusGrid g(256);
        const double coeff = euler_params(0).cubic_coeff;
        const RealField v0 = RealField::from_function(g, [](double x) { return std::cos(x); });
        const StepperConfig sc{0.05, 4.0, 1000};
        const RealField v = evolve_slow(v0, coeff, sc).states.back();
        const double speed = -std::arg(forward(v)[1]) / 4.0;
        o.require(std::abs(speed / 0.25 - 1.0) <= 0.01, "phase speed " + num(speed, 6) + " within 1% of 1/4");
        const ComplexField psi0 = ComplexField::from_function(g, [](double x) { return 0.5 * std::polar(1.0, x); });
        const ComplexField psi = evolve_slow_envelope(psi0, coeff, sc).states.back();
        const double gap = max_abs(real_part(psi + conj(psi)) - v);
        o.require(gap <= 1e-8, "complex vs real form " + num(gap) + " <= 1e-8");
    });

    criterion(9, "modified energy", 900.0, [&](Outcome& o) {
        for (auto& r : runs) {
            for (const auto& tr : r.traces) {
                if (tr.epsilon > 0.1 + 1e-12) continue;
                const auto [lo, hi] = ratio_range(tr);
                o.require(lo >= 0.5 && hi <= 2.0, label(r.cfg) + " eps=" + num(tr.epsilon) + " ratio [" + num(lo, 4) + ", " +
                                                      num(hi, 4) + "] in [0.5, 2]");
            }
            ExperimentConfig fine = r.cfg;
            fine.epsilons = {0.025};
            const auto [lo, hi] = ratio_range(run_energy_trace(fine).front());
            o.require(lo >= 0.9 && hi <= 1.1, label(r.cfg) + " eps=0.025 ratio [" + num(lo, 4) + ", " + num(hi, 4) + "] in [0.9, 1.1]");

            // E(0) vanishes when R(0) = 0, so the drift bound is read on a start with R(0) = v0.
            ExperimentConfig pert = r.cfg;
            pert.epsilons = {0.1, 0.05};
            pert.initial_error = 1.0;
            for (const auto& tr : run_energy_trace(pert)) {
                const double e0 = tr.reports.front().E;
                double lo_e = 1e300, hi_e = -1e300;
                for (const auto& rep : tr.reports) {
                    lo_e = std::min(lo_e, rep.E / e0);
                    hi_e = std::max(hi_e, rep.E / e0);
                }
                o.require(e0 > 0.0 && lo_e >= 0.5 && hi_e <= 2.0, label(r.cfg) + " eps=" + num(tr.epsilon) + " E/E(0) [" +
                                                                   num(lo_e, 4) + ", " + num(hi_e, 4) + "] in [0.5, 2]");
            }
        }
    });

    criterion(10, "contour-dynamics consistency", 30.0, [&](Outcome& o) {
        const TorusGrid g(256);
        for (double m : {0.0, 1.0}) {
            const ShearParams sp = ShearParams::normalized(m);
            double worst = 0.0;
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const RealField phi = test::random_field(g, 6, seed, 0.05);
                const RealField a = front_normal_velocity(phi, sp), b = rhs_front(phi, euler_params(m));
                worst = std::max(worst, l2_norm(a - b) / l2_norm(b));
            }
            o.require(worst <= 1e-5, "m=" + num(m) + " normal velocity vs front equation " + num(worst) + " <= 1e-5");
        }
        const ShearParams sp = ShearParams::normalized(0.5);
        std::vector<double> ys;
        for (int i = 0; i <= 40; ++i) ys.push_back(-2.0 + 0.1 * i);
        double worst = 0.0;
        for (const auto& row : profile_slice(RealField(g), 1.0, ys, sp))
            worst = std::max({worst, std::abs(row.u - sp.shear_u(row.y)), std::abs(row.v)});
        o.require(worst <= 1e-12, "flat slice vs shear " + num(worst) + " <= 1e-12");

        const double a = 0.5;
        const RealField phi = RealField::from_function(g, [=](double x) { return a * std::cos(x); });
        const ShearParams s0 = ShearParams::normalized(0.0);
        double dev = 0.0;
        for (double x : {0.0, pi / 2, pi}) {
            const Velocity w = velocity_at(phi, x, 10.0 * a, s0);
            dev = std::max(dev, std::hypot(w.u - s0.shear_u(10.0 * a), w.v));
        }
        const double rel = dev / (s0.theta() * a);
        o.require(rel < 0.02, "far field at y = 10 max|phi| " + num(rel) + " < 0.02 (front 0.5 cos x)");
    });

    criterion(11, "integrator", 30.0, [&](Outcome& o) {
        const TorusGrid g(128);
        const RealField f0 = RealField::from_function(g, [](double x) { return 0.3 * std::cos(x); });
        const ModelParams p = bh_params(0);
        auto final = [&](double dt) {
            return evolve(f0, [&](const RealField& f) { return rhs_front_nonlinear(f, p); }, StepperConfig{dt, 4.0, 1000000})
                .states.back();
        };
        const RealField a = final(0.1), b = final(0.05), c = final(0.025);
        const double order = std::log2(max_abs(a - b) / max_abs(b - c));
        o.require(within(order, 4.0, 0.2), "self-convergence order " + num(order, 4) + " in 4 +- 0.2");

        const RealField v = test::random_field(g, 16, 5);
        const ModelParams lin = ModelParams::general(0, 0, 0);
        const RealField back = evolve(v, [&](const RealField& f) { return rhs_front_nonlinear(f, lin); },
                                      StepperConfig{0.05, 2.0 * pi, 1000000})
                                   .states.back();
        const double err = max_abs(back - v);
        o.require(err <= 1e-10, "linear flow 2 pi periodicity " + num(err) + " <= 1e-10");
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
