#include "cvmfe/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cvmfe/errors.hpp"
#include "cvmfe/thermo.hpp"

namespace cvm {

namespace {

GridState grid_from_mask(std::uint32_t mask, int rows, int cols) {
    GridState g;
    g.rows = rows;
    g.cols = cols;
    g.cells.resize(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows * cols; ++i)
        g.cells[static_cast<std::size_t>(i)] =
            ((mask >> i) & 1u) ? Unit::A : Unit::B;
    return g;
}

double log_sum_exp_neg(const std::vector<double>& energies, double beta) {
    double lo = energies[0];
    for (double e : energies)
        lo = std::min(lo, e);
    // ln sum exp(-beta e) = -beta*e_min + ln sum exp(-beta (e - e_min))
    double acc = 0.0;
    for (double e : energies)
        acc += std::exp(-beta * (e - lo));
    return -beta * lo + std::log(acc);
}

} // namespace

EnumerationResult enumerate_min_free_energy(int rows, int cols, double eps1,
                                            int threads) {
    if (rows <= 0 || cols <= 0 || rows % 2 != 0)
        throw ValidationError("enumerate: rows must be positive and even");
    const int n = rows * cols;
    if (n > 24)
        throw ValidationError("enumerate: " + std::to_string(n) +
                              " cells exceeds the 24-cell tractability guard");
    const int half = n / 2;
    const std::uint64_t total = 1ull << n;

    struct Local {
        double min_f = 0.0;
        bool any = false;
        std::vector<std::uint32_t> ties;
        std::int64_t visited = 0;
    };
    const int workers = std::max(1, std::min(threads, 64));
    std::vector<Local> locals(static_cast<std::size_t>(workers));

    auto scan = [&](int w) {
        Local& loc = locals[static_cast<std::size_t>(w)];
        const std::uint64_t begin = total * static_cast<std::uint64_t>(w) /
                                    static_cast<std::uint64_t>(workers);
        const std::uint64_t end = total * static_cast<std::uint64_t>(w + 1) /
                                  static_cast<std::uint64_t>(workers);
        for (std::uint64_t m = begin; m < end; ++m) {
            if (std::popcount(m) != half)
                continue;
            ++loc.visited;
            const auto mask = static_cast<std::uint32_t>(m);
            const GridState g = grid_from_mask(mask, rows, cols);
            const double f = free_energy_cvm(count_config_vars(g), eps1).free_energy;
            if (!loc.any || f < loc.min_f) {
                loc.any = true;
                loc.min_f = f;
                loc.ties.assign(1, mask);
            } else if (f == loc.min_f) {
                loc.ties.push_back(mask);
            }
        }
    };

    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(scan, w);
        for (auto& t : pool)
            t.join();
    }

    EnumerationResult out;
    bool any = false;
    for (const Local& loc : locals) {
        out.states_enumerated += loc.visited;
        if (loc.any && (!any || loc.min_f < out.min_free_energy)) {
            any = true;
            out.min_free_energy = loc.min_f;
        }
    }
    std::vector<std::uint32_t> masks;
    for (const Local& loc : locals)
        if (loc.any && loc.min_f == out.min_free_energy)
            masks.insert(masks.end(), loc.ties.begin(), loc.ties.end());
    std::sort(masks.begin(), masks.end());
    out.argmin_grids.reserve(masks.size());
    for (std::uint32_t m : masks)
        out.argmin_grids.push_back(grid_from_mask(m, rows, cols));
    return out;
}

BoltzmannReport partition_function(const std::vector<double>& energies,
                                   double beta) {
    if (energies.empty())
        throw ValidationError("partition_function: empty energy list");
    if (!(beta > 0.0))
        throw ValidationError("partition_function: beta must be positive");

    BoltzmannReport rep;
    rep.beta = beta;
    const double ln_q = log_sum_exp_neg(energies, beta);
    rep.q = std::exp(ln_q);
    rep.f = -ln_q / beta;
    rep.probs.reserve(energies.size());
    for (double e : energies) {
        const double p = std::exp(-beta * e - ln_q);
        rep.probs.push_back(p);
        rep.u += e * p;
        rep.s -= p * std::log(p);
    }
    const double t = 1.0 / beta;
    const double gap = std::abs(rep.f - (rep.u - t * rep.s));
    if (gap > 1e-12 * std::max({1.0, std::abs(rep.f), std::abs(rep.u)}))
        throw std::logic_error("partition_function: F = U - TS identity violated");
    return rep;
}

double enthalpy_via_logq_derivative(const std::vector<double>& energies,
                                    double beta, double delta) {
    if (energies.empty())
        throw ValidationError("enthalpy_via_logq_derivative: empty energy list");
    if (!(delta > 0.0))
        throw ValidationError("enthalpy_via_logq_derivative: delta must be positive");
    if (!(beta - delta > 0.0))
        throw ValidationError("enthalpy_via_logq_derivative: beta - delta must stay positive");
    const double hi = log_sum_exp_neg(energies, beta + delta);
    const double lo = log_sum_exp_neg(energies, beta - delta);
    return -(hi - lo) / (2.0 * delta);
}

} // namespace cvm
