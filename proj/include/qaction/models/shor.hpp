#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qaction/hamiltonian.hpp"

namespace qaction::models {

inline constexpr unsigned kShorCapExponent = 14;

// Phase-shift stage: H = omega * sum_k 2^k |1><1|_k, acting for t_n = alpha/omega,
// maps the uniform superposition onto amplitudes 2^{-n/2} e^{-i alpha index}.
struct ShorPhaseModel {
    unsigned n = 1;
    double omega = 1.0;
    double alpha = 0.0;

    void validate(unsigned cap_exponent = kShorCapExponent) const {
        if (n < 1) throw DomainError("shor-size", "phase network needs n >= 1");
        if (n > cap_exponent) throw OverCap("phase network n exceeds the full-space cap exponent");
        if (!(omega > 0.0)) throw DomainError("shor-omega", "omega must be positive");
        if (!(alpha >= 0.0) || !(alpha < 2.0 * std::numbers::pi)) throw DomainError("shor-alpha", "alpha must lie in [0, 2pi)");
    }
};

struct ShorPhase {
    HamiltonianSpec h;
    double t_n;
    StateVector input;
    StateVector target;
};

inline ShorPhase build_shor_phase(const ShorPhaseModel& m, unsigned cap_exponent = kShorCapExponent) {
    m.validate(cap_exponent);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << m.n);
    RVec e(dim);
    Vec target(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        // sum_k 2^k bit_k(idx) == idx; kept as the bit sum to mirror the mode structure
        double s = 0.0;
        for (unsigned k = 0; k < m.n; ++k)
            if ((static_cast<std::uint64_t>(idx) >> k) & 1u) s += std::ldexp(1.0, static_cast<int>(k));
        e(idx) = m.omega * s;
        target(idx) = std::polar(1.0, -m.alpha * static_cast<double>(idx));
    }
    return {HamiltonianSpec::diagonal(std::move(e)), m.alpha / m.omega,
            StateVector::uniform(static_cast<std::size_t>(dim)), StateVector(std::move(target), Basis::computational)};
}

// <in|H|in> = omega (2^{n-1} - 1/2)
inline double shor_average_energy(unsigned n, double omega) {
    if (n < 1) throw DomainError("shor-size", "phase network needs n >= 1");
    return omega * (std::ldexp(1.0, static_cast<int>(n) - 1) - 0.5);
}

}  // namespace qaction::models
