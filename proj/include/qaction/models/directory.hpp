#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>

#include "qaction/hamiltonian.hpp"

namespace qaction::models {

inline constexpr double kDefaultCoupling = 0.01;

// Driven "telephone directory": H(t) = diag(E) + V cos(Omega t), initial state
// index 0 with E_0 = 0. Indices are 0-based throughout.
struct DirectoryModel {
    RVec energies;
    double epsilon = kDefaultCoupling;
    double drive_frequency = 0.0;
    std::uint64_t seed = 0;

    static DirectoryModel equally_spaced(std::size_t N, double e_max, double epsilon, std::uint64_t seed) {
        if (N < 2) throw DomainError("directory-size", "directory needs N >= 2");
        DirectoryModel m;
        m.energies = RVec::LinSpaced(static_cast<Eigen::Index>(N), 0.0, e_max);
        m.epsilon = epsilon;
        m.seed = seed;
        return m;
    }

    std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
    double e_max() const { return energies.maxCoeff(); }

    // Tune the drive onto the transition 0 -> target.
    DirectoryModel tuned_to(std::size_t target) const {
        if (target >= size()) throw DomainError("directory-target", "target index out of range");
        DirectoryModel m = *this;
        m.drive_frequency = energies(static_cast<Eigen::Index>(target));
        return m;
    }

    void validate() const {
        if (size() < 2) throw DomainError("directory-size", "directory needs N >= 2");
        if (energies(0) != 0.0) throw DomainError("directory-ground", "E_0 must be 0");
        std::set<double> seen;
        for (Eigen::Index j = 0; j < energies.size(); ++j) {
            if (!(energies(j) >= 0.0)) throw DomainError("directory-energies", "energies must be >= 0");
            if (!seen.insert(energies(j)).second)
                throw DomainError("directory-degenerate", "directory energies must be nondegenerate");
        }
        if (!(epsilon >= 0.0) || epsilon > 0.05) throw DomainError("directory-epsilon", "epsilon must lie in [0, 0.05]");
        if (!(drive_frequency >= 0.0)) throw DomainError("drive-frequency", "drive frequency must be >= 0");
    }
};

// Hermitised complex Gaussian matrix with spectral norm scaled to `norm`.
inline Mat random_hermitian(std::size_t N, double norm, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(N);
    if (norm == 0.0) return Mat::Zero(n, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            a(i, j) = cplx(re, im);
        }
    Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    h *= norm / es.eigenvalues().cwiseAbs().maxCoeff();
    // exact Hermitian symmetry after scaling
    return 0.5 * (h + h.adjoint());
}

inline HamiltonianSpec build_directory(const DirectoryModel& m) {
    m.validate();
    Mat v = random_hermitian(m.size(), m.epsilon * m.e_max(), m.seed);
    return HamiltonianSpec::driven(HamiltonianSpec::diagonal(m.energies), HamiltonianSpec::dense(std::move(v)),
                                   m.drive_frequency);
}

}  // namespace qaction::models
