#pragma once

#include <string>
#include <vector>

namespace cvm {

/// Finite discrete distribution; entries non-negative, summing to 1
/// within 1e-12.
struct Distribution {
    std::vector<double> probs;
    std::vector<std::string> labels; // optional outcome names

    static Distribution make(std::vector<double> probs,
                             std::vector<std::string> labels = {});
    std::size_t size() const { return probs.size(); }
};

/// Joint table over (external-state index i, flattened blanket+internal
/// index j), normalized to 1 within 1e-12.
struct DiscreteJoint {
    int psi_states = 0;     // I
    int blanket_states = 0; // J
    std::vector<double> table; // row-major I x J

    static DiscreteJoint make(int psi_states, int blanket_states,
                              std::vector<double> table);
    double at(int i, int j) const {
        return table[static_cast<std::size_t>(i) * blanket_states + j];
    }
};

enum class Axis { Psi, Blanket };

/// Distribution over the chosen axis (sums the table over the other one).
Distribution marginal(const DiscreteJoint& joint, Axis axis);

/// p(psi | blanket = j): column j renormalized.
Distribution conditional_from_joint(const DiscreteJoint& joint, int j);

/// sum_i q_i ln(q_i / p_i), 0 ln 0 = 0; errors when q has mass where p has none.
double kl_divergence(const Distribution& q, const Distribution& p);

/// -sum_i d_i ln d_i.
double shannon_entropy(const Distribution& d);

/// -ln p(blanket = j).
double surprisal(const DiscreteJoint& joint, int j);

/// F = sum_i q_i ln(q_i / joint(i,j)).
double variational_free_energy(const Distribution& q, const DiscreteJoint& joint,
                               int j);

/// Both decompositions of F, asserted to agree to 1e-10:
/// F = expected_energy - entropy_q = surprisal + kl_posterior.
struct Decomposition {
    double free_energy = 0.0;
    double expected_energy = 0.0;
    double entropy_q = 0.0;
    double surprisal_l = 0.0;
    double kl_posterior = 0.0;
};

Decomposition decompose(const Distribution& q, const DiscreteJoint& joint, int j);

/// Evidence-bound check: lhs = ln p(j) >= rhs = -F, gap = F - surprisal
/// = KL(q || posterior) >= 0.
struct JensenCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

JensenCheck jensen_chain_check(const DiscreteJoint& joint, int j,
                               const Distribution& q);

} // namespace cvm
