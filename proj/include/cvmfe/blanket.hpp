#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cvmfe/lattice.hpp"
#include "cvmfe/minimize.hpp"
#include "cvmfe/thermo.hpp"

namespace cvm {

struct PipelineConfig {
    int external_rows = 0;
    int external_cols = 0;
    int repr_rows = 0;
    int repr_cols = 0;
    int block_rows = 1;
    int block_cols = 1;
    std::optional<double> eps1_true; // known-world experiments
    int fit_restarts = 4;
    std::int64_t fit_trials = 0;   // <=0: default 8 * N_repr
    std::int64_t world_trials = 0; // <=0: default 0.6 * N_external
    std::uint64_t seed = 0;
};

struct PipelineReport {
    ConfigVars external_cv;
    ConfigVars repr_cv;
    ConfigVars model_cv;
    double h_estimated = 1.0;
    ThermoReport model_thermo;
    double divergence = 0.0; // KL between gamma-weighted z profiles
    std::vector<RestartSummary> fit_traces;
};

/// Everything a pipeline run produces; the report plus the three grids for
/// artifact output.
struct PipelineRun {
    PipelineReport report;
    GridState external;
    GridState repr;
    GridState model;
};

/// Sensory map: each representational cell is the majority state of its
/// block of the external grid; ties are broken by a seeded fair coin.
/// Reads the external grid only; never writes it.
GridState sense(const GridState& external, int block_rows, int block_cols,
                std::uint64_t seed);

struct FitResult {
    GridState model;
    double h = 1.0;
    ThermoReport report;
    std::vector<RestartSummary> restarts;
};

/// Estimate h from the representational grid's counted configuration
/// variables (falling back to h = 1 when estimation fails), rebalance to
/// exact x1 = 0.5 by flipping the minimum number of seeded-randomly-chosen
/// cells, then minimize at eps1 = ln(h)/2 with anneal_profile.
FitResult fit_model(const GridState& repr, int restarts, std::int64_t trials,
                    std::uint64_t seed, int threads = 1);

/// KL(model-profile || external-profile) over the six gamma-weighted
/// z outcomes.
double z_profile_divergence(const ConfigVars& model, const ConfigVars& external);

PipelineRun run_pipeline(const PipelineConfig& cfg, int threads = 1);

} // namespace cvm
