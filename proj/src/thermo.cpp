#include "cvmfe/thermo.hpp"

#include <cmath>
#include <sstream>

#include "cvmfe/errors.hpp"

namespace cvm {

namespace {

double lf(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

void check_fraction_range(const ConfigVars& cv) {
    auto bad = [](double v) { return !(v >= 0.0 && v <= 1.0); };
    for (double v : cv.x)
        if (bad(v)) throw ValidationError("entropy_cvm: fraction out of [0,1]");
    for (double v : cv.y)
        if (bad(v)) throw ValidationError("entropy_cvm: fraction out of [0,1]");
    for (double v : cv.w)
        if (bad(v)) throw ValidationError("entropy_cvm: fraction out of [0,1]");
    for (double v : cv.z)
        if (bad(v)) throw ValidationError("entropy_cvm: fraction out of [0,1]");
}

// Free energy restricted to the symmetric equilibrium line: z = (z1, z2,
// z3, z3, z2, z1) with z1 = 1/2 - z3 - 2 z2 and y/w by marginalization.
double sym_free_energy(double z2, double z3, double eps1) {
    const double z1 = 0.5 - z3 - 2.0 * z2;
    const double y1 = z1 + z2, y2 = z2 + z3;
    const double w1 = z1 + z3, w2 = 2.0 * z2;
    const double entropy = 4.0 * lf(y1) + 4.0 * lf(y2) + 2.0 * lf(w1) + 2.0 * lf(w2) +
                           std::log(2.0) - 4.0 * lf(z1) - 8.0 * lf(z2) - 4.0 * lf(z3);
    return 2.0 * eps1 * (z3 - z1) - entropy;
}

// d/dz2 of sym_free_energy; root = equilibrium z2.
double sym_gradient(double z2, double z3, double eps1) {
    const double z1 = 0.5 - z3 - 2.0 * z2;
    const double y1 = z1 + z2, y2 = z2 + z3;
    const double w1 = z1 + z3, w2 = 2.0 * z2;
    return 4.0 * eps1 -
           4.0 * (std::log(y2 / y1) + std::log(w2 / w1) + 2.0 * std::log(z1 / z2));
}

// Deterministic bisection/Newton hybrid on sym_gradient over z2 in
// (0, (1/2 - z3)/2); the gradient runs from -inf to +inf on that interval.
double solve_equilibrium_z2(double z3, double eps1) {
    const double hi_edge = (0.5 - z3) / 2.0;
    double lo = 1e-13;
    double hi = hi_edge - 1e-13;
    double x = std::min(std::max(0.125, lo), hi); // h = 1 symmetry start
    double glo = sym_gradient(lo, z3, eps1);
    for (int iter = 0; iter < 200; ++iter) {
        const double gx = sym_gradient(x, z3, eps1);
        if (std::abs(gx) <= 1e-12)
            return x;
        if ((gx > 0.0) == (glo > 0.0)) {
            lo = x;
            glo = gx;
        } else {
            hi = x;
        }
        // Newton step via numeric second derivative, bisection fallback
        const double dd = 1e-7 * std::max(1.0, std::abs(x));
        const double g2 = (sym_gradient(x + dd, z3, eps1) - sym_gradient(x - dd, z3, eps1)) /
                          (2.0 * dd);
        double next = (g2 != 0.0) ? x - gx / g2 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

} // namespace

double enthalpy_cvm(const ConfigVars& cv, double eps1) {
    return eps1 * (-cv.z[0] + cv.z[2] + cv.z[3] - cv.z[5]);
}

double entropy_cvm(const ConfigVars& cv) {
    check_fraction_range(cv);
    double sy = 0.0, sw = 0.0, sx = 0.0, sz = 0.0;
    for (int i = 0; i < 3; ++i) {
        sy += ConfigVars::beta[static_cast<std::size_t>(i)] * lf(cv.y[static_cast<std::size_t>(i)]);
        sw += ConfigVars::beta[static_cast<std::size_t>(i)] * lf(cv.w[static_cast<std::size_t>(i)]);
    }
    for (double v : cv.x)
        sx += lf(v);
    for (int i = 0; i < 6; ++i)
        sz += ConfigVars::gamma[static_cast<std::size_t>(i)] * lf(cv.z[static_cast<std::size_t>(i)]);
    return 2.0 * sy + sw - sx - 2.0 * sz;
}

ThermoReport free_energy_cvm(const ConfigVars& cv, double eps1) {
    ThermoReport tr;
    tr.eps1 = eps1;
    tr.h = h_from_eps(eps1);
    tr.enthalpy = enthalpy_cvm(cv, eps1);
    tr.entropy = entropy_cvm(cv);
    tr.free_energy = tr.enthalpy - tr.entropy;
    return tr;
}

double h_from_eps(double eps1) { return std::exp(2.0 * eps1); }

double eps_from_h(double h) {
    if (!(h > 0.0))
        throw ValidationError("eps_from_h: h must be positive");
    return 0.5 * std::log(h);
}

double analytic_z3(double h) {
    if (!(h > 0.0))
        throw ValidationError("analytic_z3: h must be positive");
    const double root_hi = 3.0 + 2.0 * std::sqrt(2.0);
    const double root_lo = 3.0 - 2.0 * std::sqrt(2.0);
    if (std::abs(h - root_hi) < 1e-9 || std::abs(h - root_lo) < 1e-9)
        throw NumericError("analytic_z3: h = " + std::to_string(h) +
                           " is at a divergence of the analytic solution");
    return (h - 3.0) * (h + 1.0) / (8.0 * (h * h - 6.0 * h + 1.0));
}

ConfigVars analytic_equilibrium(double h) {
    if (!(h >= kHWindowLo && h <= kHWindowHi)) {
        std::ostringstream msg;
        msg << "analytic_equilibrium: h = " << h << " outside validity window ["
            << kHWindowLo << ", " << kHWindowHi << "]";
        throw NumericError(msg.str());
    }
    const double z3 = analytic_z3(h);
    const double eps1 = eps_from_h(h);
    const double z2 = solve_equilibrium_z2(z3, eps1);
    const double z1 = 0.5 - z3 - 2.0 * z2;

    ConfigVars cv;
    cv.x = {0.5, 0.5};
    cv.z = {z1, z2, z3, z3, z2, z1};
    cv.y = {z1 + z2, z2 + z3, z2 + z1};
    cv.w = {z1 + z3, 2.0 * z2, z3 + z1};
    return cv;
}

namespace {

double forward_value(double h, int which) {
    const ConfigVars cv = analytic_equilibrium(h);
    switch (which) {
        case 0: return cv.z[0]; // z1, increasing in h
        case 1: return cv.z[2]; // z3, decreasing
        default: return cv.y[1]; // y2, decreasing
    }
}

// Bisect forward_value(h) = target over the validity window; nullopt-style
// result via the ok flag when the target is not bracketed.
bool invert_window(int which, double target, double& h_out) {
    double lo = kHWindowLo, hi = kHWindowHi;
    double flo = forward_value(lo, which) - target;
    double fhi = forward_value(hi, which) - target;
    if (flo == 0.0) { h_out = lo; return true; }
    if (fhi == 0.0) { h_out = hi; return true; }
    if ((flo > 0.0) == (fhi > 0.0))
        return false;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = forward_value(mid, which) - target;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    h_out = 0.5 * (lo + hi);
    return true;
}

} // namespace

HEstimate estimate_h(const ConfigVars& cv) {
    if (std::abs(cv.x[0] - 0.5) > 0.05)
        throw ValidationError("estimate_h: x1 = " + std::to_string(cv.x[0]) +
                              " outside the 0.5 +- 0.05 tolerance");
    static const char* names[3] = {"z1", "z3", "y2"};
    const double targets[3] = {cv.z[0], cv.z[2], cv.y[1]};
    HEstimate est;
    double sum = 0.0;
    for (int which = 0; which < 3; ++which) {
        double h = 0.0;
        if (invert_window(which, targets[which], h)) {
            est.candidates.emplace_back(names[which], h);
            sum += h;
        }
    }
    if (est.candidates.empty())
        throw NumericError(
            "estimate_h: none of z1, z3, y2 invertible within the validity window");
    est.h_mean = sum / static_cast<double>(est.candidates.size());
    return est;
}

} // namespace cvm
