#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>

#include "qaction/error.hpp"
#include "qaction/state.hpp"

namespace qaction {

inline constexpr double kHermitianTolerance = 1e-12;

struct DenseHermitian {
    Mat matrix;
};

struct Diagonal {
    RVec energies;
};

// sum:         E (|u><u| + |v><v|)
// commutator:  iE (|u><v| - |v><u|)
enum class ProjectorForm { sum, commutator };

struct RankTwoProjector {
    Vec u;
    Vec v;
    double scale;
    ProjectorForm form;
};

class HamiltonianSpec;

// H(t) = static + perturbation * cos(drive_frequency * t)
struct Driven {
    std::shared_ptr<const HamiltonianSpec> static_part;
    std::shared_ptr<const HamiltonianSpec> perturbation;
    double drive_frequency;
};

class HamiltonianSpec {
public:
    using Variant = std::variant<DenseHermitian, Diagonal, RankTwoProjector, Driven>;

    static HamiltonianSpec dense(Mat m) {
        if (m.rows() != m.cols() || m.rows() < 1) throw DimensionMismatch("dense Hamiltonian must be square");
        const double residue = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (residue > kHermitianTolerance)
            throw NotHermitian("matrix differs from its adjoint by " + std::to_string(residue));
        return HamiltonianSpec(DenseHermitian{std::move(m)});
    }

    static HamiltonianSpec diagonal(RVec energies) {
        if (energies.size() < 1) throw DimensionMismatch("diagonal Hamiltonian needs dim >= 1");
        if (!energies.allFinite()) throw DomainError("diagonal-energies", "energies must be finite reals");
        return HamiltonianSpec(Diagonal{std::move(energies)});
    }

    static HamiltonianSpec rank_two(Vec u, Vec v, double scale, ProjectorForm form) {
        if (u.size() != v.size() || u.size() < 1) throw DimensionMismatch("projector vectors differ in length");
        if (!std::isfinite(scale)) throw DomainError("projector-scale", "scale must be finite");
        return HamiltonianSpec(RankTwoProjector{std::move(u), std::move(v), scale, form});
    }

    static HamiltonianSpec driven(HamiltonianSpec static_part, HamiltonianSpec perturbation, double omega) {
        if (!static_part.is_static() || !perturbation.is_static())
            throw WrongVariant("driven parts must be static Hamiltonians");
        if (static_part.dim() != perturbation.dim())
            throw DimensionMismatch("driven static part and perturbation differ in dimension");
        if (!(omega >= 0.0) || !std::isfinite(omega))
            throw DomainError("drive-frequency", "drive frequency must be finite and >= 0");
        return HamiltonianSpec(Driven{std::make_shared<const HamiltonianSpec>(std::move(static_part)),
                                      std::make_shared<const HamiltonianSpec>(std::move(perturbation)), omega});
    }

    const Variant& variant() const { return v_; }
    bool is_static() const { return !std::holds_alternative<Driven>(v_); }
    bool is_driven() const { return std::holds_alternative<Driven>(v_); }

    const Driven& as_driven() const {
        if (const auto* d = std::get_if<Driven>(&v_)) return *d;
        throw WrongVariant("expected a driven Hamiltonian");
    }

    std::size_t dim() const {
        return std::visit(
            [](const auto& h) -> std::size_t {
                using T = std::decay_t<decltype(h)>;
                if constexpr (std::is_same_v<T, DenseHermitian>) return static_cast<std::size_t>(h.matrix.rows());
                else if constexpr (std::is_same_v<T, Diagonal>) return static_cast<std::size_t>(h.energies.size());
                else if constexpr (std::is_same_v<T, RankTwoProjector>) return static_cast<std::size_t>(h.u.size());
                else return h.static_part->dim();
            },
            v_);
    }

    // H x for static variants, without densifying.
    Vec apply(const Vec& x) const {
        if (static_cast<std::size_t>(x.size()) != dim()) throw DimensionMismatch("operand length != Hamiltonian dim");
        return std::visit(
            [&](const auto& h) -> Vec {
                using T = std::decay_t<decltype(h)>;
                if constexpr (std::is_same_v<T, DenseHermitian>) {
                    return h.matrix * x;
                } else if constexpr (std::is_same_v<T, Diagonal>) {
                    return h.energies.template cast<cplx>().cwiseProduct(x);
                } else if constexpr (std::is_same_v<T, RankTwoProjector>) {
                    const cplx ux = h.u.dot(x);
                    const cplx vx = h.v.dot(x);
                    if (h.form == ProjectorForm::sum) return h.scale * (h.u * ux + h.v * vx);
                    return cplx(0.0, h.scale) * (h.u * vx - h.v * ux);
                } else {
                    throw WrongVariant("apply() needs a static Hamiltonian; evaluate the driven form at fixed t");
                }
            },
            v_);
    }

    Mat to_dense() const {
        return std::visit(
            [&](const auto& h) -> Mat {
                using T = std::decay_t<decltype(h)>;
                if constexpr (std::is_same_v<T, DenseHermitian>) {
                    return h.matrix;
                } else if constexpr (std::is_same_v<T, Diagonal>) {
                    return h.energies.template cast<cplx>().asDiagonal();
                } else if constexpr (std::is_same_v<T, RankTwoProjector>) {
                    if (h.form == ProjectorForm::sum) return h.scale * (h.u * h.u.adjoint() + h.v * h.v.adjoint());
                    return cplx(0.0, h.scale) * (h.u * h.v.adjoint() - h.v * h.u.adjoint());
                } else {
                    throw WrongVariant("to_dense() needs a static Hamiltonian");
                }
            },
            v_);
    }

    // Dense matrix of H(t) for driven specs (static specs ignore t).
    Mat dense_at(double t) const {
        if (const auto* d = std::get_if<Driven>(&v_))
            return d->static_part->to_dense() + std::cos(d->drive_frequency * t) * d->perturbation->to_dense();
        return to_dense();
    }

private:
    explicit HamiltonianSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct EnergyMoments {
    double mean;
    double spread;
};

// Mean and standard deviation of H in psi. Variance is taken as ||(H - mean)psi||^2,
// which stays non-negative and does not cancel for eigenstates.
inline EnergyMoments energy_moments(const StateVector& psi, const HamiltonianSpec& h) {
    if (h.is_driven())
        throw WrongVariant("energy moments of a driven Hamiltonian are time dependent; evaluate at fixed t");
    if (psi.dim() != h.dim()) throw DimensionMismatch("state dim != Hamiltonian dim");
    const Vec& x = psi.amplitudes();
    const Vec hx = h.apply(x);
    const cplx mean = x.dot(hx);
    // imaginary residue measured against max(1, |H psi|)
    const double scale = std::max(1.0, hx.norm());
    if (std::abs(mean.imag()) > kHermitianTolerance * scale)
        throw NotHermitian("<psi|H|psi> has imaginary part " + std::to_string(mean.imag()));
    const double var = (hx - mean.real() * x).squaredNorm();
    return {mean.real(), std::sqrt(var)};
}

}  // namespace qaction
