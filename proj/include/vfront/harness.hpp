#pragma once

#include "vfront/contour.hpp"
#include "vfront/energy.hpp"
#include "vfront/grid.hpp"
#include "vfront/models.hpp"
#include "vfront/nonlocal.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vfront {

enum class ModelKind { euler, bh, cubic_v, w };

ModelKind parse_model(const std::string& name);
std::string to_string(ModelKind kind);

struct ExperimentConfig {
    ModelKind model = ModelKind::euler;
    double m = 0.0;
    std::vector<double> epsilons{0.2, 0.1, 0.05};
    double T = 1.0;           // slow-time horizon; fast runs end at T / eps^2
    int n = 3;                // Sobolev order of every reported norm
    int n_points = 256;
    double length = 2.0 * std::numbers::pi;
    double dt = 0.05;
    std::string initial_v = "cos";  // "cos", "cos+half-cos2", or "file:<path>"
    QuadratureConfig quadrature;
    std::uint64_t seed = 1;
    double record_interval = 0.5;   // cadence of the sampled sup over time
    int residual_samples_per_period = 24;
    bool correctors = true;         // false drops Psi10..Psi23 (residual negative control)
    double initial_error = 0.0;     // thm21 start: phi0 = eps V(0) + eps^2 initial_error v0
    ModelKind compare_model = ModelKind::bh;
    bool parallel = false;          // run the eps sweep concurrently
    std::optional<double> expect_slope;
    double slope_tolerance = 0.3;

    // Field slice: front = front_amplitude * initial_v profile.
    double front_amplitude = 0.1;
    double alpha_plus = 1.0;
    double alpha_minus = -1.0;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
    TorusGrid grid() const { return TorusGrid(n_points, length); }
    ModelParams params() const;
    int record_every() const;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Initial slow profile v0 named by the config. A "file:" profile holds one
/// sample per line (or comma separated), a power of two no larger than n_points.
RealField initial_profile(const ExperimentConfig& cfg);

/// Copy of cfg with n_points doubled until the initial profile's band is at
/// most n_points / 4. Every run_* entry point applies this first.
ExperimentConfig resolve_grid(const ExperimentConfig& cfg);

struct ConvergenceRow {
    double epsilon = 0.0;
    double value = 0.0;  // sup over sampled times
    double t_max = 0.0;  // time of the sup
};

struct ConvergenceTable {
    std::string quantity;
    std::vector<ConvergenceRow> rows;
    double fitted_slope = 0.0;
    double fit_residual = 0.0;
    /// Set when the slope is meaningless (all values at roundoff level).
    bool flagged = false;
    std::string note;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms deviation in log space
};

/// Least squares of log(value) on log(eps). Needs at least two positive points.
SlopeFit fit_loglog_slope(const std::vector<double>& eps, const std::vector<double>& values);

struct EnergyTrace {
    double epsilon = 0.0;
    std::vector<EnergyReport> reports;
};

ConvergenceTable run_residual_scaling(const ExperimentConfig& cfg);
/// When energy_out is non-null the modified energy is recorded along each run.
ConvergenceTable run_theorem_21(const ExperimentConfig& cfg, std::vector<EnergyTrace>* energy_out = nullptr);
ConvergenceTable run_theorem_22(const ExperimentConfig& cfg);
std::vector<EnergyTrace> run_energy_trace(const ExperimentConfig& cfg);
std::vector<SliceRow> run_field_slice(const ExperimentConfig& cfg, double x0, double y_min, double y_max, int n_y);

struct IdentityOptions {
    int n_points = 256;
    int random_fields = 50;
    int random_envelopes = 20;
    int commutation_samples = 20;
    int symbol_range = 20;
    /// Mutation hook: the battery's Hilbert transform is multiplied by this factor.
    double hilbert_scale = 1.0;
};

struct IdentityRow {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<IdentityRow> run_identities(std::uint64_t seed, const IdentityOptions& opts = {});

// CSV output: one '#'-prefixed JSON metadata line, a header, then rows.
constexpr int csv_schema_version = 1;

nlohmann::json run_metadata(const std::string& command, const ExperimentConfig& cfg);
void write_table_csv(std::ostream& os, const std::string& command, const ExperimentConfig& cfg,
                     const ConvergenceTable& table);
void write_energy_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<EnergyTrace>& traces);
void write_slice_csv(std::ostream& os, const ExperimentConfig& cfg, double x0, const std::vector<SliceRow>& rows);
void write_identities_csv(std::ostream& os, std::uint64_t seed, const std::vector<IdentityRow>& rows);

} // namespace vfront
