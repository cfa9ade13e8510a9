#pragma once

// Parameter sweeps over a 1-D or 2-D grid with a selectable computation
// engine, Fock-cutoff convergence control, and deterministic CSV/JSON
// emission. Grid points are independent tasks; results are reordered into
// row-major grid order (first axis outer) before emission, so the output is
// byte-identical for any worker count.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nopo/fock.hpp"
#include "nopo/model.hpp"
#include "nopo/observables.hpp"

namespace nopo {

inline constexpr const char* kToolVersion = "nopo 0.1.0";

enum class Engine { master_equation, weak_drive, analytic };

enum class AxisScale { linear, log };

struct SweepAxis {
    std::string name; // one of delta_a, delta_b, delta_c, delta_bc_sum, g, E, kappa, kappa_a
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    AxisScale scale = AxisScale::linear;
};

struct ConvergenceConfig {
    bool enabled = false;
    double rel_tol = 1e-3;
};

struct SweepConfig {
    SystemParams base;
    std::vector<SweepAxis> axes; // 1 or 2 entries
    bool optimal_curve = false;  // apply delta_b = delta_c = g^2/(2 delta_a) per point
    Engine engine = Engine::master_equation;
    ModeCutoffs cutoffs;
    ConvergenceConfig convergence;
};

struct SweepRow {
    std::vector<double> swept;
    CorrelationReport report;
    std::optional<double> residual;
    ModeCutoffs cutoffs_used;
    std::string error; // empty on success
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
    std::string version = kToolVersion;
    double wall_seconds = 0.0;
};

std::string engine_name(Engine engine);
Engine parse_engine(const std::string& name);

// Throws InvalidConfig on malformed axes/names/scales.
void validate(const SweepConfig& config);

// Parse a JSON config document; unknown keys anywhere are a hard error.
SweepConfig parse_config(const std::string& json_text);

// Sets the named parameter; kappa sets kappa_b = kappa_c, delta_bc_sum
// splits the sum evenly between delta_b and delta_c.
void apply_axis_value(SystemParams& p, const std::string& name, double value);

// One parameter point through the selected engine. The analytic and
// weak-drive engines fill only the fields they define.
CorrelationReport run_point(const SystemParams& p, Engine engine,
                            const ModeCutoffs& cutoffs);

// Smallest cutoffs in the +2-per-round sequence whose n_D and g2_D change by
// less than rel_tol against the next round; per-mode cap 12, NoConvergence
// beyond it.
ModeCutoffs converge_cutoffs(const SystemParams& p, const ModeCutoffs& start,
                             double rel_tol);

SweepResult run_sweep(const SweepConfig& config, int workers = 0);

void emit_csv(const SweepResult& result, std::ostream& out);
void emit_json(const SweepResult& result, std::ostream& out);
void emit_to_file(const SweepResult& result, const std::string& format,
                  const std::string& path);

} // namespace nopo
