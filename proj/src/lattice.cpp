#include "cvmfe/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "cvmfe/errors.hpp"
#include "cvmfe/rng.hpp"

namespace cvm {

namespace {

int wrap(int v, int m) { return ((v % m) + m) % m; }

void check_dims_for_random(int rows, int cols) {
    if (rows % 2 != 0)
        throw ValidationError("invalid dimensions: row count " + std::to_string(rows) +
                              " must be even");
    if (rows < 4 || cols < 4)
        throw ValidationError("invalid dimensions: need rows >= 4 and cols >= 4, got " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    if ((static_cast<std::int64_t>(rows) * cols) % 2 != 0)
        throw ValidationError("invalid dimensions: cell count must be even");
}

// z pattern class of the chevron (u, v, w); u,w are the ends, v the centre.
int triplet_class(Unit u, Unit v, Unit w) {
    const int code = (u == Unit::A ? 4 : 0) | (v == Unit::A ? 2 : 0) | (w == Unit::A ? 1 : 0);
    switch (code) {
        case 7: return 0;          // AAA
        case 6: case 3: return 1;  // AAB, BAA
        case 5: return 2;          // ABA
        case 2: return 3;          // BAB
        case 1: case 4: return 4;  // BBA, ABB
        default: return 5;         // BBB
    }
}

int pair_class(Unit a, Unit b) {
    if (a == b) return a == Unit::A ? 0 : 2;
    return 1;
}

} // namespace

int GridState::count_a() const {
    return static_cast<int>(std::count(cells.begin(), cells.end(), Unit::A));
}

std::uint64_t GridState::cell_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = (h ^ static_cast<std::uint64_t>(rows)) * 0x100000001b3ULL;
    h = (h ^ static_cast<std::uint64_t>(cols)) * 0x100000001b3ULL;
    for (Unit u : cells)
        h = (h ^ static_cast<std::uint64_t>(u)) * 0x100000001b3ULL;
    return h;
}

GridState new_random(int rows, int cols, std::uint64_t seed) {
    check_dims_for_random(rows, cols);
    GridState g;
    g.rows = rows;
    g.cols = cols;
    g.seed = seed;
    const int n = rows * cols;
    g.cells.assign(static_cast<std::size_t>(n), Unit::B);
    for (int i = 0; i < n / 2; ++i)
        g.cells[static_cast<std::size_t>(i)] = Unit::A;
    Rng rng(derive_seed(seed, 0x67726964)); // "grid"
    rng.shuffle(g.cells);
    return g;
}

GridState from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line))
        lines.push_back(line);
    // a trailing blank produced by a final newline is not a row
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();

    if (lines.empty())
        throw ValidationError("parse error: empty grid text");
    const std::size_t width = lines[0].size();
    if (width == 0)
        throw ValidationError("parse error: line 1 is empty");
    GridState g;
    g.rows = static_cast<int>(lines.size());
    g.cols = static_cast<int>(width);
    g.cells.reserve(lines.size() * width);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != width)
            throw ValidationError("parse error: line " + std::to_string(r + 1) +
                                  " has length " + std::to_string(lines[r].size()) +
                                  ", expected " + std::to_string(width));
        for (char ch : lines[r]) {
            if (ch == '1')
                g.cells.push_back(Unit::A);
            else if (ch == '0')
                g.cells.push_back(Unit::B);
            else
                throw ValidationError("parse error: line " + std::to_string(r + 1) +
                                      " has illegal character '" + std::string(1, ch) + "'");
        }
    }
    if (g.rows % 2 != 0)
        throw ValidationError("parse error: row count " + std::to_string(g.rows) +
                              " must be even");
    return g;
}

std::string to_text(const GridState& g) {
    std::string out;
    out.reserve(static_cast<std::size_t>(g.rows) * (g.cols + 1));
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c)
            out.push_back(g.at(r, c) == Unit::A ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

PatternCounts count_patterns(const GridState& g) {
    if (g.rows <= 0 || g.cols <= 0 || g.rows % 2 != 0)
        throw ValidationError("invalid grid: rows must be positive and even");
    PatternCounts pc;
    const int R = g.rows, C = g.cols;
    pc.n = static_cast<std::int64_t>(R) * C;
    for (int r = 0; r < R; ++r) {
        const auto off = neighbor_col_offsets(r);
        const int rd = wrap(r + 1, R);
        const int ru = wrap(r - 1, R);
        const int r2 = wrap(r + 2, R);
        for (int c = 0; c < C; ++c) {
            const Unit v = g.at(r, c);
            if (v == Unit::A)
                ++pc.a;
            const int ca = wrap(c + off[0], C);
            const int cb = wrap(c + off[1], C);
            // nearest-neighbour bonds, one per down-link
            ++pc.y[static_cast<std::size_t>(pair_class(v, g.at(rd, ca)))];
            ++pc.y[static_cast<std::size_t>(pair_class(v, g.at(rd, cb)))];
            // next-nearest bonds: right neighbour and two rows down
            ++pc.w[static_cast<std::size_t>(pair_class(v, g.at(r, wrap(c + 1, C))))];
            ++pc.w[static_cast<std::size_t>(pair_class(v, g.at(r2, c)))];
            // chevrons centred at v
            ++pc.z[static_cast<std::size_t>(triplet_class(g.at(rd, ca), v, g.at(rd, cb)))];
            ++pc.z[static_cast<std::size_t>(triplet_class(g.at(ru, ca), v, g.at(ru, cb)))];
        }
    }
    return pc;
}

ConfigVars config_vars_from_counts(const PatternCounts& c) {
    ConfigVars cv;
    const double n = static_cast<double>(c.n);
    const double bonds = 2.0 * n;
    cv.x[0] = static_cast<double>(c.a) / n;
    cv.x[1] = static_cast<double>(c.n - c.a) / n;
    for (int i = 0; i < 3; ++i) {
        cv.y[static_cast<std::size_t>(i)] =
            static_cast<double>(c.y[static_cast<std::size_t>(i)]) /
            (bonds * ConfigVars::beta[static_cast<std::size_t>(i)]);
        cv.w[static_cast<std::size_t>(i)] =
            static_cast<double>(c.w[static_cast<std::size_t>(i)]) /
            (bonds * ConfigVars::beta[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < 6; ++i)
        cv.z[static_cast<std::size_t>(i)] =
            static_cast<double>(c.z[static_cast<std::size_t>(i)]) /
            (bonds * ConfigVars::gamma[static_cast<std::size_t>(i)]);
    return cv;
}

ConfigVars count_config_vars(const GridState& g) {
    return config_vars_from_counts(count_patterns(g));
}

GridState swap_units(GridState g, Site site_a, Site site_b) {
    auto in_range = [&](Site s) {
        return s.row >= 0 && s.row < g.rows && s.col >= 0 && s.col < g.cols;
    };
    if (!in_range(site_a) || !in_range(site_b))
        throw ValidationError("swap: site out of range");
    if (g.at(site_a.row, site_a.col) != Unit::A)
        throw ValidationError("swap: first site is not in state A");
    if (g.at(site_b.row, site_b.col) != Unit::B)
        throw ValidationError("swap: second site is not in state B");
    g.at(site_a.row, site_a.col) = Unit::B;
    g.at(site_b.row, site_b.col) = Unit::A;
    return g;
}

} // namespace cvm
