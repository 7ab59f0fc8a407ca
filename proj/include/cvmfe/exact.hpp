#pragma once

#include <cstdint>
#include <vector>

#include "cvmfe/lattice.hpp"

namespace cvm {

struct EnumerationResult {
    double min_free_energy = 0.0;
    std::vector<GridState> argmin_grids; // every tie, ordered by bitmask
    std::int64_t states_enumerated = 0;  // C(N, N/2)
};

/// Brute-force oracle: evaluate the CVM free energy on every balanced
/// (x1 = 0.5) configuration of a rows x cols grid. Guarded at N <= 24.
/// `threads` bounds worker threads; the result is thread-count invariant.
EnumerationResult enumerate_min_free_energy(int rows, int cols, double eps1,
                                            int threads = 1);

struct BoltzmannReport {
    double q = 0.0; // partition function
    std::vector<double> probs;
    double u = 0.0; // enthalpy, sum E_n P_n
    double s = 0.0; // entropy, -sum P_n ln P_n
    double f = 0.0; // free energy, -(1/beta) ln Q
    double beta = 1.0;
};

/// Q = sum exp(-beta E_i) and the derived P_n, U, S, F (k_beta = 1).
/// Verifies F = U - T S internally.
BoltzmannReport partition_function(const std::vector<double>& energies,
                                   double beta);

/// U via the central-difference derivative -d(ln Q)/d(beta); matches
/// sum E_n P_n to O(delta^2).
double enthalpy_via_logq_derivative(const std::vector<double>& energies,
                                    double beta, double delta = 1e-5);

} // namespace cvm
