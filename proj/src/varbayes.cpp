#include "cvmfe/varbayes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cvmfe/errors.hpp"

namespace cvm {

namespace {

constexpr double kSumTol = 1e-12;

void check_probs(const std::vector<double>& p, const char* what) {
    if (p.empty())
        throw ValidationError(std::string(what) + ": empty probability vector");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0))
            throw ValidationError(std::string(what) + ": negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw ValidationError(std::string(what) + ": entries sum to " +
                              std::to_string(sum) + ", expected 1");
}

void check_j(const DiscreteJoint& joint, int j) {
    if (j < 0 || j >= joint.blanket_states)
        throw ValidationError("blanket index " + std::to_string(j) + " out of range");
}

double psi_marginal_at(const DiscreteJoint& joint, int j) {
    double m = 0.0;
    for (int i = 0; i < joint.psi_states; ++i)
        m += joint.at(i, j);
    return m;
}

} // namespace

Distribution Distribution::make(std::vector<double> probs,
                                std::vector<std::string> labels) {
    check_probs(probs, "Distribution");
    if (!labels.empty() && labels.size() != probs.size())
        throw ValidationError("Distribution: label count does not match outcomes");
    Distribution d;
    d.probs = std::move(probs);
    d.labels = std::move(labels);
    return d;
}

DiscreteJoint DiscreteJoint::make(int psi_states, int blanket_states,
                                  std::vector<double> table) {
    if (psi_states <= 0 || blanket_states <= 0)
        throw ValidationError("DiscreteJoint: dimensions must be positive");
    if (table.size() != static_cast<std::size_t>(psi_states) * blanket_states)
        throw ValidationError("DiscreteJoint: table size does not match dimensions");
    check_probs(table, "DiscreteJoint");
    DiscreteJoint joint;
    joint.psi_states = psi_states;
    joint.blanket_states = blanket_states;
    joint.table = std::move(table);
    return joint;
}

Distribution marginal(const DiscreteJoint& joint, Axis axis) {
    std::vector<double> probs;
    if (axis == Axis::Psi) {
        probs.assign(static_cast<std::size_t>(joint.psi_states), 0.0);
        for (int i = 0; i < joint.psi_states; ++i)
            for (int j = 0; j < joint.blanket_states; ++j)
                probs[static_cast<std::size_t>(i)] += joint.at(i, j);
    } else {
        probs.assign(static_cast<std::size_t>(joint.blanket_states), 0.0);
        for (int i = 0; i < joint.psi_states; ++i)
            for (int j = 0; j < joint.blanket_states; ++j)
                probs[static_cast<std::size_t>(j)] += joint.at(i, j);
    }
    Distribution d;
    d.probs = std::move(probs); // sums to 1 by construction
    return d;
}

Distribution conditional_from_joint(const DiscreteJoint& joint, int j) {
    check_j(joint, j);
    const double m = psi_marginal_at(joint, j);
    if (!(m > 0.0))
        throw NumericError("conditional_from_joint: conditioning on null blanket state " +
                           std::to_string(j));
    Distribution d;
    d.probs.reserve(static_cast<std::size_t>(joint.psi_states));
    for (int i = 0; i < joint.psi_states; ++i)
        d.probs.push_back(joint.at(i, j) / m);
    return d;
}

double kl_divergence(const Distribution& q, const Distribution& p) {
    if (q.size() != p.size())
        throw ValidationError("kl_divergence: outcome sets differ in size");
    double kl = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q.probs[i] == 0.0)
            continue;
        if (!(p.probs[i] > 0.0))
            throw NumericError("kl_divergence: q has mass where p vanishes (outcome " +
                               std::to_string(i) + "), divergence infinite");
        kl += q.probs[i] * std::log(q.probs[i] / p.probs[i]);
    }
    return kl;
}

double shannon_entropy(const Distribution& d) {
    double h = 0.0;
    for (double v : d.probs)
        if (v > 0.0)
            h -= v * std::log(v);
    return h;
}

double surprisal(const DiscreteJoint& joint, int j) {
    check_j(joint, j);
    const double m = psi_marginal_at(joint, j);
    if (!(m > 0.0))
        throw NumericError("surprisal: blanket state " + std::to_string(j) +
                           " has zero probability, surprisal infinite");
    return -std::log(m);
}

double variational_free_energy(const Distribution& q, const DiscreteJoint& joint,
                               int j) {
    check_j(joint, j);
    if (q.size() != static_cast<std::size_t>(joint.psi_states))
        throw ValidationError("variational_free_energy: q size does not match psi states");
    double f = 0.0;
    for (int i = 0; i < joint.psi_states; ++i) {
        const double qi = q.probs[static_cast<std::size_t>(i)];
        if (qi == 0.0)
            continue;
        const double pij = joint.at(i, j);
        if (!(pij > 0.0))
            throw NumericError("variational_free_energy: q has mass where the joint "
                               "vanishes (psi " + std::to_string(i) + ")");
        f += qi * std::log(qi / pij);
    }
    return f;
}

Decomposition decompose(const Distribution& q, const DiscreteJoint& joint, int j) {
    Decomposition d;
    d.free_energy = variational_free_energy(q, joint, j);
    d.entropy_q = shannon_entropy(q);
    d.surprisal_l = surprisal(joint, j);
    for (int i = 0; i < joint.psi_states; ++i) {
        const double qi = q.probs[static_cast<std::size_t>(i)];
        if (qi > 0.0)
            d.expected_energy -= qi * std::log(joint.at(i, j));
    }
    d.kl_posterior = kl_divergence(q, conditional_from_joint(joint, j));
    if (std::abs(d.free_energy - (d.expected_energy - d.entropy_q)) > 1e-10 ||
        std::abs(d.free_energy - (d.surprisal_l + d.kl_posterior)) > 1e-10)
        throw std::logic_error("decompose: free-energy decompositions disagree");
    return d;
}

JensenCheck jensen_chain_check(const DiscreteJoint& joint, int j,
                               const Distribution& q) {
    JensenCheck jc;
    const double f = variational_free_energy(q, joint, j);
    jc.lhs = -surprisal(joint, j); // ln p(blanket j)
    jc.rhs = -f;
    jc.gap = jc.lhs - jc.rhs;      // = F - surprisal = KL(q || posterior)
    return jc;
}

} // namespace cvm
