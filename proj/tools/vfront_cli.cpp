#include "vfront/harness.hpp"
#include "vfront/integrator.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

constexpr int exit_assertion = 2;
constexpr int exit_blowup = 3;

struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config)
{
    auto* opt = cmd->add_option("--config", c.config, "JSON experiment config");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    else opt->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "output CSV (default stdout)");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&c](std::uint64_t s) { c.seed = s; c.seed_set = true; }, "random seed");
}

vfront::ExperimentConfig load(const Common& c)
{
    vfront::ExperimentConfig cfg;
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        cfg = vfront::ExperimentConfig::from_json(nlohmann::json::parse(in));
    }
    if (c.seed_set) cfg.seed = c.seed;
    cfg.validate();
    return vfront::resolve_grid(cfg);
}

// Writes to --out if given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int check_slope(const vfront::ExperimentConfig& cfg, const vfront::ConvergenceTable& t)
{
    std::cerr << t.quantity << " slope " << t.fitted_slope << " (fit residual " << t.fit_residual << ")";
    if (t.flagged) std::cerr << " [flagged: " << t.note << "]";
    std::cerr << '\n';
    if (!cfg.expect_slope) return 0;
    if (t.flagged || !(std::abs(t.fitted_slope - *cfg.expect_slope) <= cfg.slope_tolerance)) {
        std::cerr << "slope outside " << *cfg.expect_slope << " +- " << cfg.slope_tolerance << '\n';
        return exit_assertion;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Vorticity front solver and scaling harness"};
    app.require_subcommand(1);

    Common residual_opts, thm21_opts, thm22_opts, ident_opts, energy_opts, field_opts;
    auto* residual = app.add_subcommand("residual", "sup-in-time residual of the approximate solution vs eps");
    add_common(residual, residual_opts, true);
    auto* thm21 = app.add_subcommand("thm21", "full model vs slow cubic approximation, sup error vs eps");
    add_common(thm21, thm21_opts, true);
    auto* thm22 = app.add_subcommand("thm22", "two front models from the same data, sup difference vs eps");
    add_common(thm22, thm22_opts, true);
    auto* ident = app.add_subcommand("identities", "operator identity battery");
    add_common(ident, ident_opts, false);
    double hilbert_scale = 1.0;
    ident->add_option("--hilbert-scale", hilbert_scale, "debug: scale the battery's Hilbert transform");
    auto* energy = app.add_subcommand("energy", "modified energy along the thm21 runs");
    add_common(energy, energy_opts, true);
    auto* field = app.add_subcommand("field", "velocity along a vertical slice through the front");
    add_common(field, field_opts, false);
    double x0 = 0.0, y_min = -1.0, y_max = 1.0;
    int n_y = 41;
    field->add_option("--x0", x0, "slice abscissa");
    field->add_option("--y-min", y_min);
    field->add_option("--y-max", y_max);
    field->add_option("--n-y", n_y, "number of slice points");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*residual) {
            const auto cfg = load(residual_opts);
            const auto table = vfront::run_residual_scaling(cfg);
            Sink sink(residual_opts.out);
            vfront::write_table_csv(sink.os(), "residual", cfg, table);
            return check_slope(cfg, table);
        }
        if (*thm21) {
            const auto cfg = load(thm21_opts);
            const auto table = vfront::run_theorem_21(cfg);
            Sink sink(thm21_opts.out);
            vfront::write_table_csv(sink.os(), "thm21", cfg, table);
            return check_slope(cfg, table);
        }
        if (*thm22) {
            const auto cfg = load(thm22_opts);
            const auto table = vfront::run_theorem_22(cfg);
            Sink sink(thm22_opts.out);
            vfront::write_table_csv(sink.os(), "thm22", cfg, table);
            return check_slope(cfg, table);
        }
        if (*ident) {
            const auto cfg = load(ident_opts);
            vfront::IdentityOptions opts;
            opts.hilbert_scale = hilbert_scale;
            const auto rows = vfront::run_identities(cfg.seed, opts);
            Sink sink(ident_opts.out);
            vfront::write_identities_csv(sink.os(), cfg.seed, rows);
            for (const auto& r : rows)
                if (!r.pass) return exit_assertion;
            return 0;
        }
        if (*energy) {
            const auto cfg = load(energy_opts);
            const auto traces = vfront::run_energy_trace(cfg);
            Sink sink(energy_opts.out);
            vfront::write_energy_csv(sink.os(), cfg, traces);
            return 0;
        }
        if (*field) {
            const auto cfg = load(field_opts);
            const auto rows = vfront::run_field_slice(cfg, x0, y_min, y_max, n_y);
            Sink sink(field_opts.out);
            vfront::write_slice_csv(sink.os(), cfg, x0, rows);
            return 0;
        }
    } catch (const vfront::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << '\n';
        return exit_blowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
