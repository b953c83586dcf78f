#include "vfront/harness.hpp"

#include "vfront/asymptotics.hpp"
#include "vfront/integrator.hpp"
#include "vfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vfront {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool is_front_model(ModelKind k) { return k == ModelKind::euler || k == ModelKind::bh; }

ModelParams params_for(ModelKind kind, double m)
{
    switch (kind) {
    case ModelKind::euler: return euler_params(m);
    case ModelKind::bh: return bh_params(m);
    case ModelKind::cubic_v:
    case ModelKind::w: return ModelParams::general(m, 0.0, m * m + 1.0);
    }
    throw std::logic_error("params_for: unknown model");
}

// Runs one job per epsilon, optionally concurrently; results keep the config order.
template <class R>
std::vector<R> sweep(const ExperimentConfig& cfg, const std::function<R(double)>& job)
{
    std::vector<R> out;
    out.reserve(cfg.epsilons.size());
    if (!cfg.parallel) {
        for (double eps : cfg.epsilons) out.push_back(job(eps));
        return out;
    }
    std::vector<std::future<R>> futures;
    for (double eps : cfg.epsilons) futures.push_back(std::async(std::launch::async, job, eps));
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

void finish_table(ConvergenceTable& table)
{
    std::vector<double> eps, vals;
    double largest = 0.0;
    for (const auto& r : table.rows) {
        eps.push_back(r.epsilon);
        vals.push_back(r.value);
        largest = std::max(largest, r.value);
    }
    if (eps.size() < 2) throw std::invalid_argument("convergence table: slope fit needs at least two epsilons");
    if (largest < 1e-12) {
        table.flagged = true;
        table.fitted_slope = std::numeric_limits<double>::quiet_NaN();
        table.fit_residual = std::numeric_limits<double>::quiet_NaN();
        table.note = "differences at roundoff level; slope not meaningful";
        return;
    }
    const SlopeFit fit = fit_loglog_slope(eps, vals);
    table.fitted_slope = fit.slope;
    table.fit_residual = fit.residual;
}

// Advances the slow solution v to slow time tau in RK4 substeps no longer than dtau_max.
class SlowTracker {
public:
    SlowTracker(RealField v0, double coeff, double dtau_max) : v_(std::move(v0)), coeff_(coeff), dtau_max_(dtau_max) {}

    const RealField& at(double tau)
    {
        const double gap = tau - tau_;
        if (gap > 0.0) {
            const int sub = std::max(1, static_cast<int>(std::ceil(gap / dtau_max_ - 1e-12)));
            const double h = gap / sub;
            for (int k = 0; k < sub; ++k) v_ = slow_advance(v_, coeff_, h);
            tau_ = tau;
        }
        return v_;
    }

private:
    RealField v_;
    double coeff_;
    double dtau_max_;
    double tau_ = 0.0;
};

std::vector<double> read_profile_samples(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("initial_v: cannot open " + path);
    std::vector<double> vals;
    std::string tok;
    while (in >> tok) {
        std::replace(tok.begin(), tok.end(), ',', ' ');
        std::istringstream ss(tok);
        double x;
        while (ss >> x) vals.push_back(x);
    }
    const std::size_t m = vals.size();
    if (m < 4 || (m & (m - 1)) != 0)
        throw std::invalid_argument("initial_v: " + path + " has " + std::to_string(m) +
                                    " samples, expected a power of two");
    return vals;
}

RealField read_profile_file(const std::string& path, const TorusGrid& g)
{
    const std::vector<double> vals = read_profile_samples(path);
    const int m = static_cast<int>(vals.size());
    if (m > g.size())
        throw std::invalid_argument("initial_v: " + path + " has more samples than n_points");
    RealField f(TorusGrid(m, g.length()));
    for (int i = 0; i < m; ++i) f[i] = vals[i];
    return m == g.size() ? f : refine(f, g.size() / m);
}

int profile_band(const RealField& v) { return band_limit(v, 1e-12 * std::max(1.0, max_abs(v))); }

} // namespace

ModelKind parse_model(const std::string& name)
{
    if (name == "euler") return ModelKind::euler;
    if (name == "bh") return ModelKind::bh;
    if (name == "cubic_v") return ModelKind::cubic_v;
    if (name == "w") return ModelKind::w;
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::euler: return "euler";
    case ModelKind::bh: return "bh";
    case ModelKind::cubic_v: return "cubic_v";
    case ModelKind::w: return "w";
    }
    return "?";
}

void ExperimentConfig::validate() const
{
    if (epsilons.empty()) throw std::invalid_argument("config: epsilons is empty");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] <= 0.5))
            throw std::invalid_argument("config: epsilon " + fmt(epsilons[i]) + " outside (0, 0.5]");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("config: epsilons must be strictly decreasing");
    }
    if (!(T > 0.0)) throw std::invalid_argument("config: T must be positive");
    if (model == ModelKind::euler && n < 3) throw std::invalid_argument("config: n >= 3 required for the euler model");
    if (n < 2) throw std::invalid_argument("config: n >= 2 required");
    TorusGrid g(n_points, length);
    if (n > n_points / 4) throw std::invalid_argument("config: n too large for the grid");
    StepperConfig{dt, 1.0, 1}.validate();
    quadrature.validate();
    if (!(record_interval >= dt)) throw std::invalid_argument("config: record_interval must be at least dt");
    if (residual_samples_per_period < 1) throw std::invalid_argument("config: residual_samples_per_period < 1");
    if (!(slope_tolerance > 0.0)) throw std::invalid_argument("config: slope_tolerance must be positive");
    if (!std::isfinite(initial_error)) throw std::invalid_argument("config: initial_error must be finite");
    if (initial_v != "cos" && initial_v != "cos+half-cos2" && initial_v.rfind("file:", 0) != 0)
        throw std::invalid_argument("config: unknown initial_v '" + initial_v + "'");
    if (!(front_amplitude >= 0.0)) throw std::invalid_argument("config: front_amplitude must be nonnegative");
    ShearParams::from_vorticities(alpha_plus, alpha_minus);
}

ModelParams ExperimentConfig::params() const { return params_for(model, m); }

int ExperimentConfig::record_every() const { return std::max(1, static_cast<int>(std::lround(record_interval / dt))); }

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j)
{
    ExperimentConfig c;
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::set<std::string> known{"model", "m", "epsilons", "T", "n", "grid", "dt", "initial_v",
                                             "quadrature", "seed", "record_interval",
                                             "residual_samples_per_period", "correctors", "initial_error",
                                             "compare_model", "parallel", "expect_slope", "slope_tolerance",
                                             "field", "$comment"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    try {
        if (j.contains("model")) c.model = parse_model(j.at("model").get<std::string>());
        if (j.contains("m")) c.m = j.at("m").get<double>();
        if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
        if (j.contains("T")) c.T = j.at("T").get<double>();
        if (j.contains("n")) c.n = j.at("n").get<int>();
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (g.contains("n_points")) c.n_points = g.at("n_points").get<int>();
            if (g.contains("length")) c.length = g.at("length").get<double>();
        }
        if (j.contains("dt")) c.dt = j.at("dt").get<double>();
        if (j.contains("initial_v")) c.initial_v = j.at("initial_v").get<std::string>();
        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            if (q.contains("n_images")) c.quadrature.n_images = q.at("n_images").get<int>();
            if (q.contains("kernel")) {
                const auto k = q.at("kernel").get<std::string>();
                if (k == "closed_form") c.quadrature.kernel = KernelSum::closed_form;
                else if (k == "image_sum") c.quadrature.kernel = KernelSum::image_sum;
                else throw std::invalid_argument("config: unknown quadrature kernel '" + k + "'");
            }
        }
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("record_interval")) c.record_interval = j.at("record_interval").get<double>();
        if (j.contains("residual_samples_per_period"))
            c.residual_samples_per_period = j.at("residual_samples_per_period").get<int>();
        if (j.contains("correctors")) c.correctors = j.at("correctors").get<bool>();
        if (j.contains("initial_error")) c.initial_error = j.at("initial_error").get<double>();
        if (j.contains("compare_model")) c.compare_model = parse_model(j.at("compare_model").get<std::string>());
        if (j.contains("parallel")) c.parallel = j.at("parallel").get<bool>();
        if (j.contains("expect_slope")) c.expect_slope = j.at("expect_slope").get<double>();
        if (j.contains("slope_tolerance")) c.slope_tolerance = j.at("slope_tolerance").get<double>();
        if (j.contains("field")) {
            const auto& f = j.at("field");
            if (f.contains("amplitude")) c.front_amplitude = f.at("amplitude").get<double>();
            if (f.contains("alpha_plus")) c.alpha_plus = f.at("alpha_plus").get<double>();
            if (f.contains("alpha_minus")) c.alpha_minus = f.at("alpha_minus").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json j;
    j["model"] = to_string(model);
    j["m"] = m;
    j["epsilons"] = epsilons;
    j["T"] = T;
    j["n"] = n;
    j["grid"] = {{"n_points", n_points}, {"length", length}};
    j["dt"] = dt;
    j["initial_v"] = initial_v;
    j["quadrature"] = {{"n_images", quadrature.n_images},
                       {"kernel", quadrature.kernel == KernelSum::closed_form ? "closed_form" : "image_sum"}};
    j["seed"] = seed;
    j["record_interval"] = record_interval;
    j["residual_samples_per_period"] = residual_samples_per_period;
    j["correctors"] = correctors;
    j["initial_error"] = initial_error;
    j["compare_model"] = to_string(compare_model);
    j["parallel"] = parallel;
    if (expect_slope) j["expect_slope"] = *expect_slope;
    j["slope_tolerance"] = slope_tolerance;
    j["field"] = {{"amplitude", front_amplitude}, {"alpha_plus", alpha_plus}, {"alpha_minus", alpha_minus}};
    return j;
}

namespace {

RealField sample_profile(const ExperimentConfig& cfg, const TorusGrid& g)
{
    const double k0 = 2.0 * pi / g.length();
    if (cfg.initial_v == "cos") return RealField::from_function(g, [&](double x) { return std::cos(k0 * x); });
    if (cfg.initial_v == "cos+half-cos2")
        return RealField::from_function(g, [&](double x) { return std::cos(k0 * x) + 0.5 * std::cos(2.0 * k0 * x); });
    if (cfg.initial_v.rfind("file:", 0) == 0) return read_profile_file(cfg.initial_v.substr(5), g);
    throw std::invalid_argument("initial_v: unknown profile '" + cfg.initial_v + "'");
}

} // namespace

RealField initial_profile(const ExperimentConfig& cfg)
{
    const TorusGrid g = cfg.grid();
    const RealField v = sample_profile(cfg, g);
    const double scale = std::max(1.0, max_abs(v));
    if (std::abs(mean(v)) > 1e-10 * scale) throw std::invalid_argument("initial_v: profile must have zero mean");
    if (profile_band(v) > g.size() / 4)
        throw std::invalid_argument("initial_v: band limit exceeds n_points / 4 (see resolve_grid)");
    return v;
}

ExperimentConfig resolve_grid(const ExperimentConfig& cfg)
{
    ExperimentConfig c = cfg;
    if (c.initial_v.rfind("file:", 0) == 0)
        c.n_points = std::max<int>(c.n_points, read_profile_samples(c.initial_v.substr(5)).size());
    const int band = profile_band(sample_profile(c, c.grid()));
    while (band > c.n_points / 4) c.n_points *= 2;
    return c;
}

SlopeFit fit_loglog_slope(const std::vector<double>& eps, const std::vector<double>& values)
{
    if (eps.size() != values.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
    if (eps.size() < 2) throw std::invalid_argument("fit_loglog_slope: need at least two points");
    const std::size_t n = eps.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0) || !(values[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: values must be positive");
        lx[i] = std::log(eps[i]);
        ly[i] = std::log(values[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: epsilons must differ");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

ConvergenceTable run_residual_scaling(const ExperimentConfig& requested)
{
    const ExperimentConfig cfg = resolve_grid(requested);
    cfg.validate();
    if (!is_front_model(cfg.model)) throw std::invalid_argument("residual: model must be euler or bh");
    const ModelParams p = cfg.params();
    const RealField v0 = initial_profile(cfg);

    std::function<ConvergenceRow(double)> job = [&](double eps) {
        const double t_end = cfg.T / (eps * eps);
        const double dt_sample = 2.0 * pi / cfg.residual_samples_per_period;
        const int samples = static_cast<int>(std::ceil(t_end / dt_sample - 1e-12));
        SlowTracker slow(v0, p.cubic_coeff, cfg.dt);
        ConvergenceRow row{eps, 0.0, 0.0};
        for (int k = 0; k <= samples; ++k) {
            const double t = std::min(k * dt_sample, t_end);
            const RealField& v = slow.at(eps * eps * t);
            if (!v.all_finite()) throw BlowUpError(t, 0, 0.0);
            const AsymptoticProfiles prof = build_profiles(psi_from_v(v), p, cfg.correctors);
            const double r = sobolev_norm(residual(prof, t, eps, cfg.quadrature), cfg.n);
            if (!std::isfinite(r)) throw BlowUpError(t, 0, 0.0);
            if (r > row.value) {
                row.value = r;
                row.t_max = t;
            }
        }
        return row;
    };

    ConvergenceTable table;
    table.quantity = "residual_norm";
    table.rows = sweep(cfg, job);
    finish_table(table);
    return table;
}

namespace {

struct Thm21Result {
    ConvergenceRow row;
    EnergyTrace trace;
};

Thm21Result theorem_21_single(const ExperimentConfig& cfg, const RealField& v0, double eps, bool with_energy)
{
    const ModelParams p = cfg.params();
    const double t_end = cfg.T / (eps * eps);
    StepperConfig sc{cfg.dt, t_end, cfg.record_every()};

    RealField phi0 = eps * v0;
    NonlinearRhs rhs;
    if (cfg.model == ModelKind::w) {
        const double coeff = p.cubic_coeff;
        rhs = [coeff](const RealField& w) { return rhs_cubic_v(w, coeff); };
    } else {
        phi0 = assemble_V(build_profiles(psi_from_v(v0), p, true), 0.0, eps);
        if (cfg.initial_error != 0.0) phi0 += (eps * eps * cfg.initial_error) * v0;
        const QuadratureConfig q = cfg.quadrature;
        rhs = [p, q](const RealField& f) { return rhs_front_nonlinear(f, p, q); };
    }

    SlowTracker slow(v0, p.cubic_coeff, cfg.dt);
    Thm21Result res{{eps, 0.0, 0.0}, {eps, {}}};
    evolve(phi0, rhs, sc, [&](double t, const RealField& phi) {
        const RealField& v = slow.at(eps * eps * t);
        const double e = sobolev_norm(phi - leading_order_w(v, t, eps), cfg.n);
        if (e > res.row.value) {
            res.row.value = e;
            res.row.t_max = t;
        }
        if (with_energy) {
            const RealField eps_v = assemble_V(build_profiles(psi_from_v(v), p, true), t, eps);
            const RealField R = error_field(phi, eps_v, eps);
            res.trace.reports.push_back(modified_energy(R, (1.0 / eps) * eps_v, eps, cfg.n, p, t));
        }
    });
    return res;
}

} // namespace

ConvergenceTable run_theorem_21(const ExperimentConfig& requested, std::vector<EnergyTrace>* energy_out)
{
    const ExperimentConfig cfg = resolve_grid(requested);
    cfg.validate();
    if (cfg.model == ModelKind::cubic_v) throw std::invalid_argument("thm21: model must be euler, bh or w");
    if (energy_out && !is_front_model(cfg.model)) throw std::invalid_argument("energy: model must be euler or bh");
    const RealField v0 = initial_profile(cfg);
    std::function<Thm21Result(double)> job = [&](double eps) {
        return theorem_21_single(cfg, v0, eps, energy_out != nullptr);
    };
    const auto results = sweep(cfg, job);

    ConvergenceTable table;
    table.quantity = "sup_error";
    for (const auto& r : results) {
        table.rows.push_back(r.row);
        if (energy_out) energy_out->push_back(r.trace);
    }
    finish_table(table);
    return table;
}

ConvergenceTable run_theorem_22(const ExperimentConfig& requested)
{
    const ExperimentConfig cfg = resolve_grid(requested);
    cfg.validate();
    if (!is_front_model(cfg.model) || !is_front_model(cfg.compare_model))
        throw std::invalid_argument("thm22: both models must be euler or bh");
    const RealField v0 = initial_profile(cfg);
    const ModelParams pa = cfg.params();
    const ModelParams pb = params_for(cfg.compare_model, cfg.m);
    const QuadratureConfig q = cfg.quadrature;

    std::function<ConvergenceRow(double)> job = [&](double eps) {
        StepperConfig sc{cfg.dt, cfg.T / (eps * eps), cfg.record_every()};
        const RealField phi0 = eps * v0;
        const Trajectory<double> ref =
            evolve(phi0, [pb, q](const RealField& f) { return rhs_front_nonlinear(f, pb, q); }, sc);
        ConvergenceRow row{eps, 0.0, 0.0};
        std::size_t idx = 0;
        evolve(phi0, [pa, q](const RealField& f) { return rhs_front_nonlinear(f, pa, q); }, sc,
               [&](double t, const RealField& phi) {
                   const double d = sobolev_norm(phi - ref.states.at(idx), cfg.n);
                   ++idx;
                   if (d > row.value) {
                       row.value = d;
                       row.t_max = t;
                   }
               });
        return row;
    };

    ConvergenceTable table;
    table.quantity = "sup_difference";
    table.rows = sweep(cfg, job);
    finish_table(table);
    if (cfg.model == cfg.compare_model && !table.flagged) {
        table.flagged = true;
        table.note = "self-comparison; slope not meaningful";
    }
    return table;
}

std::vector<EnergyTrace> run_energy_trace(const ExperimentConfig& cfg)
{
    std::vector<EnergyTrace> traces;
    if (cfg.epsilons.size() < 2) {
        // A single-epsilon trace needs no slope fit.
        cfg.validate();
        if (!is_front_model(cfg.model)) throw std::invalid_argument("energy: model must be euler or bh");
        const ExperimentConfig c = resolve_grid(cfg);
        traces.push_back(theorem_21_single(c, initial_profile(c), c.epsilons.front(), true).trace);
        return traces;
    }
    run_theorem_21(cfg, &traces);
    return traces;
}

std::vector<SliceRow> run_field_slice(const ExperimentConfig& requested, double x0, double y_min, double y_max, int n_y)
{
    const ExperimentConfig cfg = resolve_grid(requested);
    cfg.validate();
    if (n_y <= 0) throw std::invalid_argument("field: n_y must be positive");
    if (!(y_max >= y_min)) throw std::invalid_argument("field: y_max < y_min");
    const RealField phi = cfg.front_amplitude * initial_profile(cfg);
    std::vector<double> ys(n_y);
    for (int i = 0; i < n_y; ++i) ys[i] = n_y == 1 ? y_min : y_min + (y_max - y_min) * i / (n_y - 1);
    return profile_slice(phi, x0, ys, ShearParams::from_vorticities(cfg.alpha_plus, cfg.alpha_minus), cfg.quadrature);
}

namespace {

class FieldSampler {
public:
    explicit FieldSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

    // Random real field with modes 1..band, amplitudes decaying like 1/k, scaled to unit max.
    RealField real_field(const TorusGrid& g, int band)
    {
        Spectrum c(g.size(), cplx(0.0));
        for (int k = 1; k <= band; ++k) {
            const cplx a(uniform(-1.0, 1.0) / k, uniform(-1.0, 1.0) / k);
            c[k] = a;
            c[g.size() - k] = std::conj(a);
        }
        RealField f = inverse_real(g, c);
        return (1.0 / max_abs(f)) * f;
    }

    // Random analytic envelope (positive modes only), unit max.
    ComplexField envelope(const TorusGrid& g, int band)
    {
        Spectrum c(g.size(), cplx(0.0));
        for (int k = 1; k <= band; ++k) c[k] = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0)) / double(k * k);
        ComplexField f = inverse_complex(g, c);
        double mx = 0.0;
        for (int i = 0; i < f.size(); ++i) mx = std::max(mx, std::abs(f[i]));
        return cplx(1.0 / mx) * f;
    }

private:
    std::mt19937_64 rng_;
};

double max_diff(const RealField& a, const RealField& b) { return max_abs(a - b); }

double max_diff(const ComplexField& a, const ComplexField& b)
{
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

std::vector<IdentityRow> run_identities(std::uint64_t seed, const IdentityOptions& opts)
{
    const TorusGrid g(opts.n_points);
    FieldSampler rng(seed);
    const double s = opts.hilbert_scale;
    auto H = [s](const RealField& f) { return s * hilbert(f); };
    auto Hc = [s](const ComplexField& f) { return cplx(s) * hilbert(f); };
    auto P = [&](const ComplexField& f) { return cplx(0.5) * (f + cplx(0.0, 1.0) * Hc(f)); };
    auto Q = [&](const ComplexField& f) { return cplx(0.5) * (f - cplx(0.0, 1.0) * Hc(f)); };

    const double tol = 1e-9;
    std::vector<IdentityRow> rows;
    auto add = [&](const std::string& name, double err, double t) { rows.push_back({name, err, t, err <= t}); };

    double cotlar = 0.0, h2 = 0.0, absdx = 0.0, pp = 0.0, pq = 0.0, psum = 0.0, skew = 0.0;
    const int band = g.size() / 8;
    for (int r = 0; r < opts.random_fields; ++r) {
        // Cotlar and the algebra below need mean-zero input for H^2 = -I.
        RealField f = rng.real_field(g, band);
        RealField h = rng.real_field(g, band);
        const RealField hf = H(f);
        cotlar = std::max(cotlar, max_diff(product(hf, hf) - product(f, f), 2.0 * H(product(f, hf))));
        h2 = std::max(h2, max_diff(H(hf), -1.0 * f));
        absdx = std::max(absdx, max_diff(abs_dx(f), H(dx(f))) / std::max(1.0, max_abs(dx(f))));
        const ComplexField fc = to_complex(f);
        const ComplexField pf = P(fc);
        pp = std::max(pp, max_diff(P(pf), pf));
        pq = std::max(pq, max_diff(P(Q(fc)), ComplexField(g)));
        psum = std::max(psum, max_diff(pf + Q(fc), fc));
        skew = std::max(skew, std::abs(inner(H(f), h) + inner(f, H(h))));
    }
    add("cotlar", cotlar, tol);
    add("hilbert_squared", h2, tol);
    add("abs_dx_equals_h_dx", absdx, tol);
    add("p_idempotent", pp, tol);
    add("pq_zero", pq, tol);
    add("p_plus_q_identity", psum, tol);
    add("hilbert_skew_adjoint", skew, tol);

    // Symbol of M vanishes unless the sign-sum identity holds.
    long violations = 0;
    const int R = opts.symbol_range;
    auto sgn = [](long a) { return (a > 0) - (a < 0); };
    for (long k = -R; k <= R; ++k)
        for (long xi = -R; xi <= R; ++xi)
            for (long eta = -R; eta <= R; ++eta) {
                if (trilinear_symbol(k, xi, eta) == 0) continue;
                if (sgn(k) + sgn(xi) + sgn(eta) != sgn(k + xi + eta)) ++violations;
            }
    add("trilinear_symbol_sign_sum", static_cast<double>(violations), 0.0);

    double comm = 0.0;
    for (int r = 0; r < opts.commutation_samples; ++r) {
        const RealField v = rng.real_field(g, g.size() / 16);
        const double t = rng.uniform(0.0, 2.0 * pi);
        const RealField lhs = exp_hilbert(trilinear_M(v, v, v), t);
        const RealField w = exp_hilbert(v, t);
        comm = std::max(comm, max_diff(lhs, trilinear_M(w, w, w)) / std::max(1.0, max_abs(lhs)));
    }
    add("trilinear_commutes_with_flow", comm, 1e-10);

    std::vector<double> worst;
    std::vector<std::string> names;
    for (int r = 0; r < opts.random_envelopes; ++r) {
        const auto ids = solvability_identities(rng.envelope(g, g.size() / 16));
        if (names.empty()) {
            for (const auto& id : ids) names.push_back(id.name);
            worst.assign(ids.size(), 0.0);
        }
        for (std::size_t i = 0; i < ids.size(); ++i) worst[i] = std::max(worst[i], ids[i].max_error);
    }
    for (std::size_t i = 0; i < names.size(); ++i) add("solvability_" + names[i], worst[i], 1e-10);
    return rows;
}

nlohmann::json run_metadata(const std::string& command, const ExperimentConfig& cfg)
{
    return {{"schema_version", csv_schema_version}, {"command", command}, {"config", cfg.to_json()}};
}

namespace {

void write_params(std::ostream& os, const ExperimentConfig& cfg)
{
    os << ',' << cfg.n_points << ',' << fmt(cfg.length) << ',' << fmt(cfg.dt) << ',' << cfg.quadrature.n_images;
}

constexpr const char* param_cols = ",n_points,length,dt,n_images";

} // namespace

void write_table_csv(std::ostream& os, const std::string& command, const ExperimentConfig& cfg,
                     const ConvergenceTable& table)
{
    nlohmann::json meta = run_metadata(command, cfg);
    meta["quantity"] = table.quantity;
    meta["fitted_slope"] = table.flagged ? nlohmann::json(nullptr) : nlohmann::json(table.fitted_slope);
    meta["fit_residual"] = table.flagged ? nlohmann::json(nullptr) : nlohmann::json(table.fit_residual);
    meta["flagged"] = table.flagged;
    if (!table.note.empty()) meta["note"] = table.note;
    os << '#' << meta.dump() << '\n';
    os << "epsilon," << table.quantity << ",t_max,n" << param_cols << '\n';
    for (const auto& r : table.rows) {
        os << fmt(r.epsilon) << ',' << fmt(r.value) << ',' << fmt(r.t_max) << ',' << cfg.n;
        write_params(os, cfg);
        os << '\n';
    }
}

void write_energy_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<EnergyTrace>& traces)
{
    os << '#' << run_metadata("energy", cfg).dump() << '\n';
    os << "epsilon,t,E0,En,E,hn_norm_sq,ratio,n" << param_cols << '\n';
    for (const auto& tr : traces)
        for (const auto& r : tr.reports) {
            os << fmt(tr.epsilon) << ',' << fmt(r.t) << ',' << fmt(r.E0) << ',' << fmt(r.En) << ',' << fmt(r.E) << ','
               << fmt(r.hn_norm_sq) << ',' << fmt(r.ratio) << ',' << cfg.n;
            write_params(os, cfg);
            os << '\n';
        }
}

void write_slice_csv(std::ostream& os, const ExperimentConfig& cfg, double x0, const std::vector<SliceRow>& rows)
{
    nlohmann::json meta = run_metadata("field", cfg);
    meta["x0"] = x0;
    os << '#' << meta.dump() << '\n';
    os << "x0,y,u,v,u_shear" << param_cols << '\n';
    const ShearParams sp = ShearParams::from_vorticities(cfg.alpha_plus, cfg.alpha_minus);
    for (const auto& r : rows) {
        os << fmt(x0) << ',' << fmt(r.y) << ',' << fmt(r.u) << ',' << fmt(r.v) << ',' << fmt(sp.shear_u(r.y));
        write_params(os, cfg);
        os << '\n';
    }
}

void write_identities_csv(std::ostream& os, std::uint64_t seed, const std::vector<IdentityRow>& rows)
{
    const nlohmann::json meta = {{"schema_version", csv_schema_version}, {"command", "identities"}, {"seed", seed}};
    os << '#' << meta.dump() << '\n';
    os << "identity,max_error,tolerance,pass\n";
    for (const auto& r : rows)
        os << '"' << r.name << "\"," << fmt(r.max_error) << ',' << fmt(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
}

} // namespace vfront
