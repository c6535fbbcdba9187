#pragma once

#include <bit>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qaction/hamiltonian.hpp"

namespace qaction::models {

// Writes an n-bit input by rotating the bits in `flip_mask` to the orthogonal
// state within t_c, each under (Omega_R/2) sigma_x with Omega_R = pi / t_c.
struct PrepModel {
    unsigned n = 1;
    std::uint64_t flip_mask = 0;
    double t_c = 1.0;

    double rabi_rate() const { return std::numbers::pi / t_c; }
    unsigned flips() const { return static_cast<unsigned>(std::popcount(flip_mask)); }

    void validate() const {
        if (n < 1 || n > 64) throw DomainError("prep-size", "prep register needs 1 <= n <= 64");
        if (!(t_c > 0.0)) throw DomainError("prep-time", "t_c must be positive");
        if (n < 64 && (flip_mask >> n) != 0) throw DomainError("prep-mask", "flip mask has bits outside the register");
    }
};

// Alternating mask 0b...0101: ceil(n/2) flips, the half-weight input.
inline std::uint64_t checkerboard_mask(unsigned n) {
    std::uint64_t m = 0;
    for (unsigned k = 0; k < n && k < 64; k += 2) m |= std::uint64_t{1} << k;
    return m;
}

inline HamiltonianSpec bit_flip_generator(double rabi_rate) {
    Mat h(2, 2);
    h << 0.0, 0.5 * rabi_rate, 0.5 * rabi_rate, 0.0;
    return HamiltonianSpec::dense(std::move(h));
}

struct PrepSchedule {
    std::vector<unsigned> bits;
    std::vector<HamiltonianSpec> generators;  // one per flipped bit
    double per_bit_spread = 0.0;
    double total_spread_time_product = 0.0;
};

inline PrepSchedule build_prep(const PrepModel& m) {
    m.validate();
    PrepSchedule s;
    const auto zero = StateVector::basis_state(2, 0);
    for (unsigned k = 0; k < m.n; ++k) {
        if (!((m.flip_mask >> k) & 1u)) continue;
        s.bits.push_back(k);
        s.generators.push_back(bit_flip_generator(m.rabi_rate()));
        const double spread = energy_moments(zero, s.generators.back()).spread;
        s.per_bit_spread = spread;
        s.total_spread_time_product += spread * m.t_c;
    }
    return s;
}

}  // namespace qaction::models
