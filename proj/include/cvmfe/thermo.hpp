#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvmfe/lattice.hpp"

namespace cvm {

/// Reduced (dimensionless, per-site, kT = 1) thermodynamic quantities of
/// one configuration-variable profile.
struct ThermoReport {
    double enthalpy = 0.0;
    double entropy = 0.0;
    double free_energy = 0.0; // enthalpy - entropy
    double eps1 = 0.0;
    double h = 1.0; // exp(2*eps1)
};

/// Activation enthalpy; fixed at zero in the equiprobable analytic regime.
inline constexpr double kEps0 = 0.0;

/// Validity window of the analytic equilibrium inversion.
inline constexpr double kHWindowLo = 1.0 / 1.6;
inline constexpr double kHWindowHi = 1.6;

/// eps1 * (-z1 + z3 + z4 - z6); equals eps1 * (2 y2 - y1 - y3).
double enthalpy_cvm(const ConfigVars& cv, double eps1);

/// 2*sum(beta*Lf(y)) + sum(beta*Lf(w)) - sum(Lf(x)) - 2*sum(gamma*Lf(z))
/// with Lf(v) = v ln v, Lf(0) = 0. Zero for a uniform grid, ln 2 at the
/// equiprobable point.
double entropy_cvm(const ConfigVars& cv);

ThermoReport free_energy_cvm(const ConfigVars& cv, double eps1);

double h_from_eps(double eps1);
double eps_from_h(double h);

/// z3(h) = (h-3)(h+1) / (8 (h^2 - 6h + 1)); singular near h = 3 +- 2*sqrt(2).
double analytic_z3(double h);

/// Equilibrium profile at x1 = x2 = 0.5 for h in the validity window.
/// z3 = z4 is the analytic value; the A<->B symmetric closure (z6 = z1,
/// z5 = z2) leaves one degree of freedom, fixed by minimizing the CVM free
/// energy along it (deterministic Newton/bisection from the h = 1 start).
ConfigVars analytic_equilibrium(double h);

struct HEstimate {
    double h_mean = 1.0;
    std::vector<std::pair<std::string, double>> candidates; // (variable, h)
};

/// Invert the equilibrium relations for z1, z3 and y2 by bisection over the
/// validity window; candidates outside the attainable range are dropped and
/// the survivors averaged. Requires x1 within 0.05 of 0.5.
HEstimate estimate_h(const ConfigVars& cv);

} // namespace cvm
