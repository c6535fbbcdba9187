#pragma once

#include <cmath>
#include <vector>

#include "qaction/hamiltonian.hpp"
#include "qaction/numtheory.hpp"

namespace qaction::models {

// Truncated sector of the prime-log cavity: the vacuum plus the contiguous
// labels [lo, hi]. The drive couples the vacuum to every window state with the
// same magnitude `coupling`; window states do not couple to each other.
struct CavityModel {
    double omega = 1.0;
    numtheory::Int q_max = 2;
    numtheory::Int lo = 2;
    numtheory::Int hi = 2;
    double coupling = 0.0;

    void validate() const {
        if (!(omega > 0.0)) throw DomainError("cavity-omega", "omega must be positive");
        if (lo < 2 || hi < lo) throw DomainError("cavity-window", "window must satisfy 2 <= lo <= hi");
        if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw DomainError("cavity-coupling", "coupling must be >= 0");
        for (numtheory::Int n = lo; n <= hi; ++n)
            if (numtheory::largest_prime_factor(n) > q_max)
                throw DomainError("cavity-prime-set", "label " + std::to_string(n) + " has a prime factor above Q = " +
                                                          std::to_string(q_max));
    }

    bool contains(numtheory::Int n) const { return n >= lo && n <= hi; }
};

struct CavityWindow {
    std::vector<numtheory::Int> labels;  // labels[0] == 1 (vacuum)
    std::vector<double> energies;
    std::vector<numtheory::FockLabel> fock;
    HamiltonianSpec driven;

    std::size_t index_of(numtheory::Int label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw DomainError("cavity-target", "label " + std::to_string(label) + " not in window");
    }
};

inline double cavity_drive_for(const CavityModel& m, numtheory::Int target) {
    return numtheory::cavity_energy(target, m.omega);
}

inline CavityWindow build_cavity_window(const CavityModel& m, double drive_frequency) {
    m.validate();
    std::vector<numtheory::Int> labels{1};
    for (numtheory::Int n = m.lo; n <= m.hi; ++n) {
        // contiguous integer labels; strict order is an integer comparison
        if (n <= labels.back()) throw DomainError("cavity-order", "labels must be strictly increasing");
        labels.push_back(n);
    }
    const auto d = static_cast<Eigen::Index>(labels.size());
    RVec e(d);
    std::vector<numtheory::FockLabel> fock;
    std::vector<double> energies;
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto lab = labels[static_cast<std::size_t>(i)];
        e(i) = numtheory::cavity_energy(lab, m.omega);
        energies.push_back(e(i));
        fock.push_back(numtheory::fock_label_from_integer(lab));
    }
    Mat v = Mat::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) v(0, k) = v(k, 0) = m.coupling;
    auto h = HamiltonianSpec::driven(HamiltonianSpec::diagonal(std::move(e)), HamiltonianSpec::dense(std::move(v)),
                                     drive_frequency);
    return {std::move(labels), std::move(energies), std::move(fock), std::move(h)};
}

}  // namespace qaction::models
