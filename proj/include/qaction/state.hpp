#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "qaction/error.hpp"

namespace qaction {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kNormTolerance = 1e-12;

enum class Basis { computational, fock_window, reduced_2d };

inline std::string_view to_string(Basis b) {
    switch (b) {
        case Basis::computational: return "computational-n";
        case Basis::fock_window: return "fock-window";
        case Basis::reduced_2d: return "reduced-2d";
    }
    return "?";
}

// Normalised amplitude vector over a labelled basis. Construction always
// normalises; the only way to hold an unnormalised vector is the raw Vec.
class StateVector {
public:
    StateVector(Vec amplitudes, Basis basis) : amps_(std::move(amplitudes)), basis_(basis) {
        if (amps_.size() < 1) throw DomainError("state-dim", "state vector needs dim >= 1");
        const double n = amps_.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw DomainError("state-norm", "state vector has zero or non-finite norm");
        amps_ /= n;
    }

    static StateVector basis_state(std::size_t dim, std::size_t index, Basis basis = Basis::computational) {
        if (index >= dim) throw DomainError("state-index", "basis index out of range");
        Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return {std::move(v), basis};
    }

    static StateVector uniform(std::size_t dim, Basis basis = Basis::computational) {
        return {Vec::Constant(static_cast<Eigen::Index>(dim), cplx(1.0, 0.0)), basis};
    }

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    Basis basis() const { return basis_; }
    const Vec& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

private:
    Vec amps_;
    Basis basis_;
};

inline void require_same_space(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("states have dims " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    if (a.basis() != b.basis())
        throw DimensionMismatch("states live in different bases (" + std::string(to_string(a.basis())) +
                                " vs " + std::string(to_string(b.basis())) + ")");
}

// <a|b>, conjugate-linear in a.
inline cplx inner_product(const StateVector& a, const StateVector& b) {
    require_same_space(a, b);
    return a.amplitudes().dot(b.amplitudes());
}

}  // namespace qaction
