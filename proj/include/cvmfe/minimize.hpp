#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cvmfe/lattice.hpp"
#include "cvmfe/thermo.hpp"

namespace cvm {

enum class StopReason { MaxTrials, StallWindow };

struct TrialRecord {
    std::int64_t trial = 0;
    Site site_a;
    Site site_b;
    double delta_f = 0.0;
    bool accepted = false;
    double free_energy_after = 0.0;
};

struct MinimizeTrace {
    std::vector<TrialRecord> records;
    ThermoReport initial_report;
    ThermoReport final_report;
    std::int64_t trials_run = 0;
    std::int64_t accepted_count = 0;
    StopReason stop_reason = StopReason::MaxTrials;
};

struct MinimizeResult {
    GridState grid;
    MinimizeTrace trace;
};

/// Default trial budget: 10 * N^2.
std::int64_t default_max_trials(int rows, int cols);
inline constexpr int kDefaultStallWindow = 1000;

/**
 * Strict-descent swap protocol: draw site pairs uniformly until the first
 * is A and the second is B, swap them, recompute the free energy at eps1,
 * and keep the swap iff it strictly lowers it. Stops after max_trials
 * trials or stall_window consecutive rejections. Deterministic per seed;
 * x1 is conserved throughout.
 *
 * The free energy is tracked through exact integer pattern-count updates;
 * every 1000 trials the counts are audited against a full recount.
 */
MinimizeResult minimize_grid(const GridState& g, double eps1,
                             std::int64_t max_trials, int stall_window,
                             std::uint64_t seed, bool record_trials = true);

struct RestartSummary {
    int restart = 0;
    std::int64_t trials_run = 0;
    std::int64_t accepted = 0;
    double initial_f = 0.0;
    double final_f = 0.0;
};

struct AnnealResult {
    GridState grid;
    ThermoReport report;
    MinimizeTrace best_trace; // trace of the winning restart
    std::vector<RestartSummary> restarts;
};

/// Multi-restart wrapper. Restart 0 descends from g itself; later restarts
/// from independent seeded shuffles of g's A-cells (conserving x1). Returns
/// the lowest-free-energy result (ties to the lower restart index).
/// `threads` bounds the number of worker threads (<=1 means sequential);
/// results are identical regardless.
AnnealResult anneal_profile(const GridState& g, double eps1, int restarts,
                            std::int64_t per_restart_trials, std::uint64_t seed,
                            int threads = 1);

/// CSV export: trial,delta_f,accepted,free_energy_after.
void write_trace_csv(const MinimizeTrace& trace, std::ostream& out);

} // namespace cvm
