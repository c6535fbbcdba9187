#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

#include "qaction/hamiltonian.hpp"

namespace qaction::models {

enum class GroverVariant { h1, h2 };

// Continuous-time search over N labels. H1 = E(|x><x| + |in><in|),
// H2 = iE(|x><in| - |in><x|), with |in> the uniform superposition.
struct GroverModel {
    std::uint64_t N = 2;
    double E = 1.0;
    GroverVariant variant = GroverVariant::h1;
    std::uint64_t target = 0;

    void validate() const {
        if (N < 2) throw DomainError("grover-size", "Grover model needs N >= 2");
        if (target >= N) throw DomainError("grover-target", "target index must be < N");
        if (!(E > 0.0) || !std::isfinite(E)) throw DomainError("grover-energy", "energy scale must be positive");
    }

    // Number of q-bits needed to index N labels.
    unsigned qubits() const {
        unsigned n = 0;
        while ((std::uint64_t{1} << n) < N) ++n;
        return n;
    }

    double overlap() const { return 1.0 / std::sqrt(static_cast<double>(N)); }
};

inline StateVector grover_initial(const GroverModel& m) {
    m.validate();
    return StateVector::uniform(m.N);
}

inline StateVector grover_target(const GroverModel& m) {
    m.validate();
    return StateVector::basis_state(m.N, m.target);
}

inline HamiltonianSpec build_grover(const GroverModel& m) {
    m.validate();
    const auto form = m.variant == GroverVariant::h1 ? ProjectorForm::sum : ProjectorForm::commutator;
    return HamiltonianSpec::rank_two(grover_target(m).amplitudes(), grover_initial(m).amplitudes(), m.E, form);
}

// Closed form on span{|x>, |in>}. With a = <x|in> = N^{-1/2}, b = sqrt(1 - a^2):
//   H1: eigenvalues E(1 +- a);  P(t) = a^2 cos^2(Eat) + sin^2(Eat)
//   H2: eigenvalues +-Eb;       P(t) = sin^2(Ebt + asin a)
struct GroverReduced {
    double gap;
    double flip_time;
    double peak_probability;
    double initial_spread;  // energy spread of |in>
    std::function<double(double)> probability;
};

inline GroverReduced grover_reduced(const GroverModel& m) {
    m.validate();
    const double E = m.E;
    const double a = m.overlap();
    const double b = std::sqrt(1.0 - a * a);
    if (m.variant == GroverVariant::h1) {
        return {2.0 * E * a, std::numbers::pi / (2.0 * E * a), 1.0, E * a * b, [=](double t) {
                    const double c = std::cos(E * a * t), s = std::sin(E * a * t);
                    return a * a * c * c + s * s;
                }};
    }
    const double shift = std::asin(a);
    return {2.0 * E * b, (std::numbers::pi / 2.0 - shift) / (E * b), 1.0, E * b, [=](double t) {
                const double s = std::sin(E * b * t + shift);
                return s * s;
            }};
}

// Reference constants for the two variants, kept for discrepancy reporting.
struct GroverReference {
    double gap;
    double flip_time;
};

inline GroverReference grover_reference(const GroverModel& m) {
    m.validate();
    const double rootN = std::sqrt(static_cast<double>(m.N));
    if (m.variant == GroverVariant::h1) return {m.E / rootN, std::numbers::pi * rootN / (2.0 * m.E)};
    return {2.0 * m.E, std::numbers::pi / (4.0 * m.E)};
}

}  // namespace qaction::models
