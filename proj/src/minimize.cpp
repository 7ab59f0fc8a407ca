#include "cvmfe/minimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cvmfe/errors.hpp"
#include "cvmfe/rng.hpp"

namespace cvm {

namespace {

int wrap(int v, int m) { return ((v % m) + m) % m; }

int pair_class(Unit a, Unit b) {
    if (a == b) return a == Unit::A ? 0 : 2;
    return 1;
}

int triplet_class(Unit u, Unit v, Unit w) {
    const int code = (u == Unit::A ? 4 : 0) | (v == Unit::A ? 2 : 0) | (w == Unit::A ? 1 : 0);
    switch (code) {
        case 7: return 0;
        case 6: case 3: return 1;
        case 5: return 2;
        case 2: return 3;
        case 1: case 4: return 4;
        default: return 5;
    }
}

// Descent engine: grid plus exact integer pattern counts, updated locally
// on each candidate swap. A rejected trial restores both bit-identically.
class Engine {
public:
    Engine(const GridState& g, double eps1)
        : g_(g), counts_(count_patterns(g)), eps1_(eps1) {}

    const GridState& grid() const { return g_; }
    const PatternCounts& counts() const { return counts_; }

    double free_energy() const {
        return free_energy_cvm(config_vars_from_counts(counts_), eps1_).free_energy;
    }

    ThermoReport report() const {
        return free_energy_cvm(config_vars_from_counts(counts_), eps1_);
    }

    /// Swap states at a (A -> B) and b (B -> A), updating counts locally.
    void apply_swap(Site a, Site b) {
        collect_owners(a, b);
        tally(-1);
        g_.at(a.row, a.col) = Unit::B;
        g_.at(b.row, b.col) = Unit::A;
        tally(+1);
    }

    /// Undo the swap applied with the same (a, b).
    void revert_swap(Site a, Site b) {
        collect_owners(a, b);
        tally(-1);
        g_.at(a.row, a.col) = Unit::A;
        g_.at(b.row, b.col) = Unit::B;
        tally(+1);
    }

    void audit() const {
        if (!(count_patterns(g_) == counts_))
            throw std::logic_error("minimize: incremental counts diverged from full recount");
    }

private:
    // Owner sites whose slots (2 y-bonds, 2 w-bonds, 2 chevrons each) can
    // touch the given site. Unaffected slots cancel in the -/+ tally.
    void collect_owners(Site a, Site b) {
        owners_.clear();
        for (Site s : {a, b}) {
            const auto off = neighbor_col_offsets(s.row);
            const int ru = wrap(s.row - 1, g_.rows);
            const int rd = wrap(s.row + 1, g_.rows);
            push_owner(s.row, s.col);
            push_owner(ru, wrap(s.col + off[0], g_.cols));
            push_owner(ru, wrap(s.col + off[1], g_.cols));
            push_owner(rd, wrap(s.col + off[0], g_.cols));
            push_owner(rd, wrap(s.col + off[1], g_.cols));
            push_owner(s.row, wrap(s.col - 1, g_.cols));
            push_owner(wrap(s.row - 2, g_.rows), s.col);
        }
        std::sort(owners_.begin(), owners_.end());
        owners_.erase(std::unique(owners_.begin(), owners_.end()), owners_.end());
    }

    void push_owner(int r, int c) {
        owners_.push_back(r * g_.cols + c);
    }

    void tally(int sign) {
        const std::int64_t d = sign;
        for (int idx : owners_) {
            const int r = idx / g_.cols;
            const int c = idx % g_.cols;
            const auto off = neighbor_col_offsets(r);
            const int rd = wrap(r + 1, g_.rows);
            const int ru = wrap(r - 1, g_.rows);
            const Unit v = g_.at(r, c);
            const Unit da = g_.at(rd, wrap(c + off[0], g_.cols));
            const Unit db = g_.at(rd, wrap(c + off[1], g_.cols));
            counts_.y[static_cast<std::size_t>(pair_class(v, da))] += d;
            counts_.y[static_cast<std::size_t>(pair_class(v, db))] += d;
            counts_.w[static_cast<std::size_t>(pair_class(v, g_.at(r, wrap(c + 1, g_.cols))))] += d;
            counts_.w[static_cast<std::size_t>(pair_class(v, g_.at(wrap(r + 2, g_.rows), c)))] += d;
            counts_.z[static_cast<std::size_t>(triplet_class(da, v, db))] += d;
            counts_.z[static_cast<std::size_t>(
                triplet_class(g_.at(ru, wrap(c + off[0], g_.cols)), v,
                              g_.at(ru, wrap(c + off[1], g_.cols))))] += d;
        }
    }

    GridState g_;
    PatternCounts counts_;
    double eps1_;
    std::vector<int> owners_;
};

void run_indexed(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace

std::int64_t default_max_trials(int rows, int cols) {
    const std::int64_t n = static_cast<std::int64_t>(rows) * cols;
    return 10 * n * n;
}

MinimizeResult minimize_grid(const GridState& g, double eps1,
                             std::int64_t max_trials, int stall_window,
                             std::uint64_t seed, bool record_trials) {
    if (max_trials < 1)
        throw ValidationError("minimize_grid: max_trials must be >= 1");
    if (stall_window < 1)
        throw ValidationError("minimize_grid: stall_window must be >= 1");
    const int ca = g.count_a();
    if (ca == 0 || ca == g.size())
        throw NumericError("minimize_grid: no swap possible, grid is uniform");

    Engine eng(g, eps1);
    Rng rng(derive_seed(seed, 0x6d696e)); // "min"
    const std::int64_t n = g.size();
    const std::int64_t a_initial = eng.counts().a;

    MinimizeResult out;
    out.trace.initial_report = eng.report();
    double f_cur = out.trace.initial_report.free_energy;

    std::int64_t trial = 0;
    int rejects = 0;
    while (trial < max_trials && rejects < stall_window) {
        ++trial;
        Site sa, sb;
        for (;;) {
            const auto i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            sa = {i / g.cols, i % g.cols};
            sb = {j / g.cols, j % g.cols};
            if (eng.grid().at(sa.row, sa.col) == Unit::A &&
                eng.grid().at(sb.row, sb.col) == Unit::B)
                break;
        }
        eng.apply_swap(sa, sb);
        const double f_new = eng.free_energy();
        const double delta = f_new - f_cur;
        const bool accepted = delta < 0.0;
        if (accepted) {
            f_cur = f_new;
            rejects = 0;
            ++out.trace.accepted_count;
        } else {
            eng.revert_swap(sa, sb);
            ++rejects;
        }
        if (record_trials)
            out.trace.records.push_back({trial, sa, sb, delta, accepted, f_cur});
        if (eng.counts().a != a_initial)
            throw std::logic_error("minimize: x1 not conserved");
        if (trial % 1000 == 0)
            eng.audit();
    }
    eng.audit();

    out.trace.trials_run = trial;
    out.trace.stop_reason =
        rejects >= stall_window ? StopReason::StallWindow : StopReason::MaxTrials;
    out.trace.final_report = eng.report();
    out.grid = eng.grid();
    out.grid.seed = g.seed;
    return out;
}

AnnealResult anneal_profile(const GridState& g, double eps1, int restarts,
                            std::int64_t per_restart_trials, std::uint64_t seed,
                            int threads) {
    if (restarts < 1)
        throw ValidationError("anneal_profile: restarts must be >= 1");
    const int ca = g.count_a();
    if (ca == 0 || ca == g.size())
        throw NumericError("anneal_profile: no swap possible, grid is uniform");

    std::vector<MinimizeResult> results(static_cast<std::size_t>(restarts));
    run_indexed(restarts, threads, [&](int i) {
        const std::uint64_t sub_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        GridState start = g;
        if (i > 0) {
            // fresh placement of the same number of A cells
            Rng shuffle_rng(derive_seed(sub_seed, 0x73687566)); // "shuf"
            shuffle_rng.shuffle(start.cells);
        }
        results[static_cast<std::size_t>(i)] =
            minimize_grid(start, eps1, per_restart_trials, kDefaultStallWindow, sub_seed);
    });

    int best = 0;
    for (int i = 1; i < restarts; ++i) {
        if (results[static_cast<std::size_t>(i)].trace.final_report.free_energy <
            results[static_cast<std::size_t>(best)].trace.final_report.free_energy)
            best = i;
    }

    AnnealResult out;
    out.grid = std::move(results[static_cast<std::size_t>(best)].grid);
    out.report = results[static_cast<std::size_t>(best)].trace.final_report;
    out.best_trace = std::move(results[static_cast<std::size_t>(best)].trace);
    out.restarts.reserve(static_cast<std::size_t>(restarts));
    for (int i = 0; i < restarts; ++i) {
        const MinimizeTrace& tr = (i == best) ? out.best_trace
                                              : results[static_cast<std::size_t>(i)].trace;
        out.restarts.push_back({i, tr.trials_run, tr.accepted_count,
                                tr.initial_report.free_energy,
                                tr.final_report.free_energy});
    }
    return out;
}

void write_trace_csv(const MinimizeTrace& trace, std::ostream& out) {
    out << "trial,delta_f,accepted,free_energy_after\n";
    std::ostringstream row;
    row.precision(17);
    for (const TrialRecord& r : trace.records) {
        row.str("");
        row << r.trial << ',' << r.delta_f << ',' << (r.accepted ? 1 : 0) << ','
            << r.free_energy_after << '\n';
        out << row.str();
    }
}

} // namespace cvm
