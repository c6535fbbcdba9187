#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qaction/error.hpp"

namespace qaction::numtheory {

using Int = std::uint64_t;

// Occupation structure of a cavity eigenstate: (prime, photon count) pairs
// with strictly increasing primes. Empty means the vacuum (label 1).
struct FockLabel {
    std::vector<std::pair<Int, unsigned>> factors;

    bool is_vacuum() const { return factors.empty(); }
    friend bool operator==(const FockLabel&, const FockLabel&) = default;
};

inline std::vector<Int> primes_up_to(Int q_max) {
    if (q_max < 2) throw DomainError("prime-bound", "primes_up_to needs q_max >= 2");
    std::vector<bool> composite(q_max + 1, false);
    std::vector<Int> out;
    for (Int p = 2; p <= q_max; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (Int m = p * p; m <= q_max; m += p) composite[m] = true;
    }
    return out;
}

// Trial division.
inline FockLabel fock_label_from_integer(Int n) {
    if (n < 1) throw DomainError("fock-label", "labels start at 1 (the vacuum)");
    FockLabel label;
    for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        unsigned m = 0;
        while (n % d == 0) {
            n /= d;
            ++m;
        }
        if (m > 0) label.factors.emplace_back(d, m);
    }
    if (n > 1) label.factors.emplace_back(n, 1u);
    return label;
}

inline Int integer_from_fock_label(const FockLabel& label) {
    Int n = 1;
    Int last = 1;
    for (const auto& [q, m] : label.factors) {
        if (q <= last || m == 0) throw DomainError("fock-label", "primes must increase and exponents be >= 1");
        last = q;
        for (unsigned i = 0; i < m; ++i) {
            if (n > std::numeric_limits<Int>::max() / q)
                throw Overflow("label product exceeds 64-bit width");
            n *= q;
        }
    }
    return n;
}

inline Int largest_prime_factor(Int n) {
    const auto label = fock_label_from_integer(n);
    return label.is_vacuum() ? 1 : label.factors.back().first;
}

// omega * sum m_i log q_i, the mode-sum form of omega log N (natural log).
inline double cavity_energy(Int n, double omega) {
    if (n < 1) throw DomainError("fock-label", "labels start at 1 (the vacuum)");
    double e = 0.0;
    for (const auto& [q, m] : fock_label_from_integer(n).factors) e += m * std::log(static_cast<double>(q));
    const double direct = std::log(static_cast<double>(n));
    if (std::abs(e - direct) > 1e-12 * std::max(direct, 1.0))
        throw NumericalContract("mode-sum", "mode sum disagrees with log N for N = " + std::to_string(n));
    return omega * e;
}

inline std::string to_string(const FockLabel& label) {
    if (label.is_vacuum()) return "1";
    std::string s;
    for (const auto& [q, m] : label.factors) {
        if (!s.empty()) s += '*';
        s += std::to_string(q);
        if (m > 1) s += '^' + std::to_string(m);
    }
    return s;
}

}  // namespace qaction::numtheory
