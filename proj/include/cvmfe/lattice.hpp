#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cvm {

enum class Unit : std::uint8_t { B = 0, A = 1 };

struct Site {
    int row = 0;
    int col = 0;
};

/**
 * Bistate grid on the periodic zigzag (offset-row) lattice.
 *
 * Adjacency convention: site (r,c) in an even row has down-neighbours
 * (r+1, c) and (r+1, c+1); in an odd row, (r+1, c-1) and (r+1, c).
 * Up-neighbours use the same column offsets in row r-1. All indices wrap,
 * which is why the row count must be even.
 *
 * Nearest-neighbour (y) bonds are the 2N diagonal links, next-nearest (w)
 * bonds are (r,c)-(r,c+1) and (r,c)-(r+2,c), and triplets are the 2N
 * chevron paths (u,v,w) whose ends are the two down- or the two
 * up-neighbours of the centre v.
 */
struct GridState {
    int rows = 0;
    int cols = 0;
    std::vector<Unit> cells; // row-major
    std::optional<std::uint64_t> seed; // generation provenance, not compared

    Unit at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
    Unit& at(int r, int c) { return cells[static_cast<std::size_t>(r) * cols + c]; }
    int size() const { return rows * cols; }
    int count_a() const;
    std::uint64_t cell_hash() const;

    bool operator==(const GridState& o) const {
        return rows == o.rows && cols == o.cols && cells == o.cells;
    }
};

/// Column offsets of the two down-neighbours (and two up-neighbours) of a
/// site in row r.
inline std::array<int, 2> neighbor_col_offsets(int r) {
    return (r % 2 == 0) ? std::array<int, 2>{0, 1} : std::array<int, 2>{-1, 0};
}

/// Raw integer pattern tallies; exact, so identities can be tested without
/// floating-point slack. y/w order: {AA, unlike, BB}; z order:
/// {AAA, AAB|BAA, ABA, BAB, BBA|ABB, BBB}.
struct PatternCounts {
    std::int64_t n = 0;
    std::int64_t a = 0;
    std::array<std::int64_t, 3> y{};
    std::array<std::int64_t, 3> w{};
    std::array<std::int64_t, 6> z{};

    bool operator==(const PatternCounts&) const = default;
};

/// Per-distinct-pattern fractions with their degeneracy vectors, so that
/// x1+x2 = sum(beta*y) = sum(beta*w) = sum(gamma*z) = 1.
struct ConfigVars {
    std::array<double, 2> x{};
    std::array<double, 3> y{};
    std::array<double, 3> w{};
    std::array<double, 6> z{};

    static constexpr std::array<double, 3> beta{1.0, 2.0, 1.0};
    static constexpr std::array<double, 6> gamma{1.0, 2.0, 1.0, 1.0, 2.0, 1.0};
};

/// Balanced random grid: exactly N/2 cells in state A, uniform over such
/// assignments, deterministic per seed. rows and cols must be >= 4, rows even.
GridState new_random(int rows, int cols, std::uint64_t seed);

/// Parse rows of '0'/'1' ('1' = A). Lines must be equal length, row count
/// even; final newline optional. Errors name the offending line.
GridState from_text(const std::string& text);
std::string to_text(const GridState& g);

PatternCounts count_patterns(const GridState& g);
ConfigVars config_vars_from_counts(const PatternCounts& c);
ConfigVars count_config_vars(const GridState& g);

/// Exchange the states at site_a (must be A) and site_b (must be B).
GridState swap_units(GridState g, Site site_a, Site site_b);

} // namespace cvm
