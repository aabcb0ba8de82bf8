#ifndef QDRIVE_EXPERIMENT_HPP
#define QDRIVE_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdrive/analysis.hpp"
#include "qdrive/propagator.hpp"

// Experiment runner: sweeps protocol grids into deterministic CSV tables.
// Two runs of the same spec produce byte-identical data sections; every row
// echoes the inputs needed to recompute it in isolation.

namespace qdrive {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class ExperimentName {
    fig2d,        // time to target fidelity vs omega (composite, roland_cerf, lz)
    fig2e,        // final fidelity vs duration at omega = 0.5
    fig3c,        // final fidelity vs duration at omega = 0.55 (lz, superadiabatic linear, coupling-only variant)
    fig3d,        // fidelity during the protocol at omega = 0.55
    fig4a,        // tangent robustness around (omega = 0.5, T = 5.9)
    fig4b,        // duration frontier vs realized coupling
    custom_sweep,
};

std::string to_string(ExperimentName name);

struct ExperimentSpec {
    ExperimentName name = ExperimentName::custom_sweep;
    std::vector<double> omega_grid;
    std::vector<double> duration_grid;
    std::vector<double> deviation_grid;
    std::vector<ProtocolKind> kinds;
    std::optional<RobustnessAxis> axis;  // custom sweeps: robustness axis
    double target_fidelity = 0.9;
    PropagatorConfig propagator;
    int workers = 0;  // 0 = hardware concurrency; env QDRIVE_WORKERS overrides
    bool timestamps = false;
};

// Built-in spec reproducing one of the published figures, with the paper's
// default settings.
ExperimentSpec builtin_spec(ExperimentName name);

struct ExperimentResult {
    std::string metadata_json;  // '#'-prefixed header line content
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// Executes the spec's grid. Grid points failing preconditions are flagged in
// their row (status column) and the run continues. Rows appear in input
// order regardless of worker count. Throws invalid_parameter on an empty grid.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_result_csv(const ExperimentResult& result, std::ostream& out);
void write_result_csv(const ExperimentResult& result, const std::string& path);

// Deterministic %.12g rendering used for every numeric cell.
std::string format_double(double v);

// FNV-1a over the canonical spec serialization; part of the provenance header.
std::uint64_t fnv1a64(const std::string& data);

// Worker count resolution: QDRIVE_WORKERS env var, then the spec value, then
// hardware concurrency.
int resolve_worker_count(int requested);

}  // namespace qdrive

#endif
